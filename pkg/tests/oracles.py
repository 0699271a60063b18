"""Independent reference computations used to pin expected test values.

Everything in here is deliberately built from different primitives than the
library under test: mpmath arbitrary-precision root finding instead of the
companion-matrix path, explicit transform matrices instead of filtering
kernels, and direct-sum DFTs instead of FFTs.
"""

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50


def classic_daubechies(order):
    """Extremal-phase Daubechies scaling filter of the given order.

    Textbook spectral factorization of cos^(2N)(w/2) * P_N(sin^2(w/2)) done
    in 50-digit arithmetic: find the roots of P_N, map each root y to the
    quadratic z^2 + (4y - 2) z + 1 = 0, keep the root inside the unit circle,
    normalize at z=1, and read the taps off in descending powers of z.
    """
    n = int(order)
    if n < 1:
        raise ValueError("order must be >= 1")
    # P_N(y) = sum_j C(N-1+j, j) y^j, ascending.
    coeffs = [mp.mpf(math.comb(n - 1 + j, j)) for j in range(n)]
    if n == 1:
        inside = []
    else:
        inside = []
        for y in mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200):
            b = 4 * y - 2
            disc = mp.sqrt(b * b - 4)
            for z in ((-b + disc) / 2, (-b - disc) / 2):
                if abs(z) < 1:
                    inside.append(z)
    # ((1+z)/2)^N ascending coefficients.
    poly = [mp.binomial(n, j) / mp.mpf(2) ** n for j in range(n + 1)]
    for z0 in inside:
        # multiply by (z - z0): ascending convolution with [-z0, 1]
        nxt = [mp.mpc(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i] += c * (-z0)
            nxt[i + 1] += c
        poly = nxt
    # |L(1)|^2 = P_N(0) = 1 fixes the constant; sign so H(1) = sqrt(2) > 0.
    at_one = sum(poly)
    scale = mp.sqrt(2) / at_one
    taps = [mp.re(c * scale) for c in poly]
    # Descending powers of z == time order of the extremal-phase filter.
    taps.reverse()
    return np.array([float(t) for t in taps])


def dft_matrix(n, sign=-1):
    """Unitary DFT matrix built by direct summation (no FFT)."""
    k = np.arange(n)
    return np.exp(sign * 2j * np.pi * np.outer(k, k) / n) / math.sqrt(n)


def periodic_stage_matrix(h, g, n):
    """Rows are the even translates of h then g on Z/nZ.

    Applying this (2 x n/2) x n matrix to a signal gives one analysis stage;
    its transpose is one synthesis stage.
    """
    taps = len(h)
    rows = np.zeros((n, n))
    for m in range(n // 2):
        for j in range(taps):
            rows[m, (2 * m + j) % n] += h[j]
            rows[n // 2 + m, (2 * m + j) % n] += g[j]
    return rows


def mse(a, b):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(np.mean((a - b) ** 2))


def psnr(a, b, peak=255.0):
    e = mse(a, b)
    if e == 0.0:
        return math.inf
    return 10.0 * math.log10(peak * peak / e)
