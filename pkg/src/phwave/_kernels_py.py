"""Pure-NumPy filter-bank kernels (fallback backend).

All kernels operate on batches: ``x`` has shape (batch, n) and each batch row
may use its own filter row from ``h``/``g`` of shape (batch, taps).  The
accumulation order (ascending tap index) matches the compiled backend so the
two produce bit-identical results.
"""

import numpy as np


def analyze_periodic(x, h, g):
    """One periodic analysis stage: correlate at even offsets, wrap indices.

    Returns (approx, detail), each of shape (batch, n // 2).
    """
    batch, n = x.shape
    taps = h.shape[1]
    half = n // 2
    starts = 2 * np.arange(half)
    a = np.zeros((batch, half), dtype=np.complex128)
    d = np.zeros((batch, half), dtype=np.complex128)
    for j in range(taps):
        cols = x[:, (starts + j) % n]
        a += h[:, j : j + 1] * cols
        d += g[:, j : j + 1] * cols
    return a, d


def synthesize_periodic(a, d, h, g):
    """Transpose of ``analyze_periodic``: scatter-add over wrapped indices."""
    batch, half = a.shape
    taps = h.shape[1]
    n = 2 * half
    starts = 2 * np.arange(half)
    out = np.zeros((batch, n), dtype=np.complex128)
    for j in range(taps):
        out[:, (starts + j) % n] += h[:, j : j + 1] * a + g[:, j : j + 1] * d
    return out


def analyze_valid(x_ext, h, g):
    """One expansive analysis stage on an already-extended signal.

    Valid correlation at even offsets; output length is
    ``(n_ext - taps) // 2 + 1`` per row.
    """
    batch, n_ext = x_ext.shape
    taps = h.shape[1]
    half = (n_ext - taps) // 2 + 1
    starts = 2 * np.arange(half)
    a = np.zeros((batch, half), dtype=np.complex128)
    d = np.zeros((batch, half), dtype=np.complex128)
    for j in range(taps):
        cols = x_ext[:, starts + j]
        a += h[:, j : j + 1] * cols
        d += g[:, j : j + 1] * cols
    return a, d


def synthesize_valid(a, d, h, g, n_ext):
    """Transpose of ``analyze_valid``: overlap-add onto the extended domain."""
    batch, half = a.shape
    taps = h.shape[1]
    starts = 2 * np.arange(half)
    out = np.zeros((batch, n_ext), dtype=np.complex128)
    for j in range(taps):
        out[:, starts + j] += h[:, j : j + 1] * a + g[:, j : j + 1] * d
    return out
