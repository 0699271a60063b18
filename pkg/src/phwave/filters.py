"""Frequency-adaptive Daubechies-type filter generation.

A filter family parametrized by a frequency ``xi >= 0`` and a dyadic level
``k >= 0``.  Each (order, xi, k) triple yields an orthonormal low-pass /
high-pass pair of length ``2 * order``; at ``xi = 0`` the construction
reduces exactly to the classical extremal-phase Daubechies filters.

The construction in one paragraph: the level parameters give a damping value
``eta = 4 * x0 / (1 + x0)**2`` with ``x0 = exp(-xi / 2**(k+1))``.  The
low-pass mask is a product of a binomial smoothing factor
``((z + x0) / (1 + x0))**N`` and a minimum-phase factor obtained by Riesz
factorization of a deformed Bezout polynomial Q.  Q is an affine
reparametrization of the classical Daubechies polynomial chosen so that

    d(w) * Q(sin^2(w/2)) + d(w + pi) * Q(cos^2(w/2)) = 1

holds identically, where ``d`` is the squared magnitude of the smoothing
factor.  That identity is what makes the resulting two-channel filter bank
orthonormal at every level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_ORDER = 12  # companion-matrix root conditioning degrades beyond this

__all__ = [
    "LevelParams",
    "DaubechiesPoly",
    "BezoutPoly",
    "RefinementMask",
    "FilterPair",
    "FactorizationError",
    "make_level_params",
    "daubechies_poly",
    "make_bezout_poly",
    "bezout_value",
    "bezout_value_direct",
    "smoothing_power",
    "bezout_power",
    "riesz_factor",
    "make_mask",
    "make_filter_pair",
]


class FactorizationError(ValueError):
    """Raised when spectral factorization meets a (near) unit-circle root."""


@dataclass(frozen=True)
class LevelParams:
    """Per-(xi, k) scalars driving the whole construction.

    ``x0 = exp(-xi / 2**(k+1))`` and ``eta = 4*x0/(1+x0)**2``; both lie in
    (0, 1] and equal 1 exactly when ``xi == 0``.
    """

    xi: float
    k: int
    x0: float
    eta: float


def make_level_params(xi: float, k: int) -> LevelParams:
    """Validate (xi, k) and compute the damping parameters.

    Parameters
    ----------
    xi : float
        Frequency parameter, >= 0.
    k : int
        Dyadic level index, >= 0.
    """
    xi = float(xi)
    if not math.isfinite(xi) or xi < 0:
        raise ValueError(f"xi must be a finite nonnegative real, got {xi}")
    k = int(k)
    if k < 0:
        raise ValueError(f"level index k must be >= 0, got {k}")
    x0 = math.exp(-xi / 2.0 ** (k + 1))
    eta = 4.0 * x0 / (1.0 + x0) ** 2
    return LevelParams(xi=xi, k=k, x0=x0, eta=eta)


@dataclass(frozen=True)
class DaubechiesPoly:
    """The classical order-N Daubechies polynomial sum_j C(N-1+j, j) y^j.

    ``roots`` holds its N-1 zeros, grouped into exact conjugate pairs;
    ``leading`` is the top coefficient C(2N-2, N-1).
    """

    order: int
    coeffs: np.ndarray  # ascending, length N, exact binomials as floats
    roots: np.ndarray  # complex128, length N-1
    leading: float


def _canonical_conjugate_pairs(roots: np.ndarray) -> np.ndarray:
    """Force numerically-paired roots into exact conjugate pairs.

    Real parts of paired roots are averaged and imaginary parts symmetrized
    so downstream products of paired factors come out real to rounding.
    """
    tol = 1e-8 * max(1.0, float(np.max(np.abs(roots)) if roots.size else 1.0))
    out = []
    pool = list(roots)
    while pool:
        r = pool.pop(0)
        if abs(r.imag) <= tol:
            out.append(complex(r.real, 0.0))
            continue
        # nearest conjugate partner
        best = min(range(len(pool)), key=lambda i: abs(pool[i] - r.conjugate()))
        partner = pool.pop(best)
        mean = (r + partner.conjugate()) / 2.0
        out.append(mean)
        out.append(mean.conjugate())
    out.sort(key=lambda z: (z.real, z.imag))
    return np.asarray(out, dtype=np.complex128)


@lru_cache(maxsize=None)
def daubechies_poly(order: int) -> DaubechiesPoly:
    """Build the order-N polynomial and its zeros.

    Roots come from the companion matrix (``numpy.roots``) refined by one
    Newton step on the exact coefficients, then symmetrized into conjugate
    pairs.  Orders above 12 are rejected: the monomial-basis root problem
    becomes badly conditioned.
    """
    n = int(order)
    if not 1 <= n <= MAX_ORDER:
        raise ValueError(f"order must be in 1..{MAX_ORDER}, got {order}")
    coeffs = np.array([float(math.comb(n - 1 + j, j)) for j in range(n)])
    leading = float(math.comb(2 * n - 2, n - 1))
    if n == 1:
        roots = np.zeros(0, dtype=np.complex128)
    else:
        desc = coeffs[::-1]
        roots = np.roots(desc)
        dcoef = np.polyder(np.poly1d(desc))
        p = np.poly1d(desc)
        roots = roots - p(roots) / dcoef(roots)
        roots = _canonical_conjugate_pairs(roots)
    coeffs.setflags(write=False)
    roots.setflags(write=False)
    return DaubechiesPoly(order=n, coeffs=coeffs, roots=roots, leading=leading)


@dataclass(frozen=True)
class BezoutPoly:
    """Deformed Bezout polynomial Q for one (order, xi, k).

    ``roots`` are its zeros in the x variable, ``cos_roots = 1 - 2*roots``
    are the corresponding zeros in the cos(w) variable, and ``scale`` is the
    leading coefficient of the root-product form.
    """

    params: LevelParams
    order: int
    roots: np.ndarray
    cos_roots: np.ndarray
    scale: float


def make_bezout_poly(db: DaubechiesPoly, params: LevelParams) -> BezoutPoly:
    """Map the classical zeros c to the damped zeros (c*(2-eta)+eta-1)/eta."""
    n = db.order
    eta = params.eta
    roots = (db.roots * (2.0 - eta) + (eta - 1.0)) / eta
    roots = _canonical_conjugate_pairs(roots)
    cos_roots = 1.0 - 2.0 * roots
    scale = (2.0 - eta) ** (-2 * n + 1) * eta ** (n - 1) * db.leading
    roots.setflags(write=False)
    cos_roots.setflags(write=False)
    return BezoutPoly(
        params=params, order=n, roots=roots, cos_roots=cos_roots, scale=scale
    )


def bezout_value(bez: BezoutPoly, x):
    """Evaluate Q at x through the root-product form."""
    x = np.asarray(x, dtype=np.float64)
    acc = np.full(x.shape, bez.scale, dtype=np.complex128)
    for r in bez.roots:
        acc = acc * (x - r)
    return np.real(acc) if acc.shape else float(np.real(acc))


def bezout_value_direct(bez: BezoutPoly, x):
    """Cross-check evaluation: compose the classical polynomial directly.

    Q(x) = (2-eta)^(-N) * R((1 - eta*(1-x)) / (2-eta)) with R the classical
    polynomial; every quantity involved is nonnegative for x in [0, 1], so
    the composition is cancellation-free.
    """
    n = bez.order
    eta = bez.params.eta
    x = np.asarray(x, dtype=np.float64)
    u = (1.0 - eta * (1.0 - x)) / (2.0 - eta)
    coeffs = daubechies_poly(n).coeffs
    acc = np.zeros(u.shape)
    for c in coeffs[::-1]:
        acc = acc * u + c
    out = (2.0 - eta) ** (-n) * acc
    return out if out.shape else float(out)


def smoothing_power(params: LevelParams, order: int, omega):
    """Squared magnitude of the binomial smoothing factor on the circle.

    Returns |e^{iw} + x0|^(2N) / (1 + x0)^(2N), a real value in [0, 1].
    """
    omega = np.asarray(omega, dtype=np.float64)
    x0 = params.x0
    base = (1.0 + x0 * x0 + 2.0 * x0 * np.cos(omega)) / (1.0 + x0) ** 2
    out = base ** int(order)
    return out if out.shape else float(out)


def bezout_power(bez: BezoutPoly, omega):
    """Q evaluated at sin^2(w/2); the squared response of the Riesz factor
    is half of this."""
    omega = np.asarray(omega, dtype=np.float64)
    return bezout_value(bez, np.sin(omega / 2.0) ** 2)


def riesz_factor(bez: BezoutPoly) -> np.ndarray:
    """Minimum-phase real spectral factor of Q(sin^2(w/2)) / 2.

    For each root c of Q in the cos(w) variable solve z^2 - 2cz + 1 = 0 and
    keep the root inside the unit circle; conjugate pairs of c yield
    conjugate pairs of z, so the expanded product has real coefficients.
    Taps are returned in descending powers of z (time order), scaled so the
    factor is positive at w = 0 with squared value Q(0) / 2.
    """
    n = bez.order
    selected = []
    for c in bez.cos_roots:
        disc = np.sqrt(complex(c * c - 1.0))
        # Evaluate the larger root first and recover the smaller one as its
        # reciprocal (the product of the pair is 1); taking the difference
        # c - disc directly cancels catastrophically for |c| >> 1.
        big = c + disc if abs(c + disc) >= abs(c - disc) else c - disc
        z = 1.0 / big
        if abs(abs(z) - 1.0) < 1e-12:
            raise FactorizationError(
                f"spectral root on the unit circle (|z|={abs(z):.15f}); "
                "the polynomial being factored is not strictly positive"
            )
        selected.append(z)
    poly = np.array([1.0 + 0.0j])
    for z in selected:
        poly = np.convolve(poly, np.array([1.0, -z]))  # descending powers
    residue = float(np.max(np.abs(poly.imag))) if n > 1 else 0.0
    if residue > 1e-12:
        raise FactorizationError(
            f"conjugate-pair grouping left imaginary residue {residue:.3e}"
        )
    poly = poly.real
    q0 = bezout_value(bez, np.zeros(()))
    gain = math.sqrt(float(q0) / 2.0) / float(poly.sum())
    # poly is already in descending powers of z, i.e. tap order.
    return np.ascontiguousarray(poly * gain)


@dataclass(frozen=True)
class RefinementMask:
    """Low-pass refinement mask for one (order, xi, k).

    All coefficient arrays are stored in tap order (index j holds the
    coefficient of z^-j).  ``m`` is the convolution of the smoothing factor
    ``m1`` (length N+1) with the Riesz factor ``m2`` (length N); the discrete
    filter is ``h = 2 * m``.
    """

    order: int
    params: LevelParams
    m1: np.ndarray
    m2: np.ndarray
    m: np.ndarray
    h: np.ndarray


def make_mask(order: int, xi: float, k: int) -> RefinementMask:
    """Assemble the refinement mask from its two factors."""
    n = int(order)
    params = make_level_params(xi, k)
    db = daubechies_poly(n)
    bez = make_bezout_poly(db, params)
    x0 = params.x0
    # ((z + x0)/(1 + x0))^N read in descending powers: tap j carries x0^j.
    m1 = np.array(
        [math.comb(n, j) * x0**j for j in range(n + 1)], dtype=np.float64
    ) / (1.0 + x0) ** n
    m2 = riesz_factor(bez)
    m = np.convolve(m1, m2)
    h = 2.0 * m
    for arr in (m1, m2, m, h):
        arr.setflags(write=False)
    return RefinementMask(order=n, params=params, m1=m1, m2=m2, m=m, h=h)


@dataclass(frozen=True)
class FilterPair:
    """Orthonormal analysis pair: low-pass h and its alternating flip g.

    ``g[j] = (-1)**j * h[2N-1-j]`` on storage indices 0..2N-1.  The analytic
    high-pass rule indexes h at 1-j over negative positions; ``g_offset``
    records the shift (2N-2) between the stored index and that analytic
    index, so ``g_stored[j] == (-1)**(j - g_offset) * h[1 - (j - g_offset)]``.
    """

    order: int
    xi: float
    k: int
    h: np.ndarray
    g: np.ndarray
    g_offset: int


def make_filter_pair(order: int, xi: float, k: int) -> FilterPair:
    """Generate (and cache) the filter pair for one (order, xi, k).

    Thread safety: results are immutable and the cache is the standard
    ``lru_cache``, so concurrent readers are fine.
    """
    return _make_filter_pair(int(order), float(xi), int(k))


@lru_cache(maxsize=None)
def _make_filter_pair(order: int, xi: float, k: int) -> FilterPair:
    mask = make_mask(order, xi, k)
    h = mask.h
    n2 = h.size
    signs = np.where(np.arange(n2) % 2 == 0, 1.0, -1.0)
    g = signs * h[::-1]
    g = np.ascontiguousarray(g)
    g.setflags(write=False)
    return FilterPair(order=order, xi=xi, k=k, h=h, g=g, g_offset=n2 - 2)
