# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled filter-bank kernels.

Same interface and, by construction, the same floating-point accumulation
order (ascending tap index per output element) as ``_kernels_py``.
"""

import numpy as np


def analyze_periodic(x, h, g):
    batch, n = x.shape
    half = n // 2
    a = np.empty((batch, half), dtype=np.complex128)
    d = np.empty((batch, half), dtype=np.complex128)
    _analyze_periodic(x, h, g, a, d)
    return a, d


def synthesize_periodic(a, d, h, g):
    batch, half = a.shape
    out = np.zeros((batch, 2 * half), dtype=np.complex128)
    _synthesize_periodic(a, d, h, g, out)
    return out


def analyze_valid(x_ext, h, g):
    batch, n_ext = x_ext.shape
    taps = h.shape[1]
    half = (n_ext - taps) // 2 + 1
    a = np.empty((batch, half), dtype=np.complex128)
    d = np.empty((batch, half), dtype=np.complex128)
    _analyze_valid(x_ext, h, g, a, d)
    return a, d


def synthesize_valid(a, d, h, g, n_ext):
    batch = a.shape[0]
    out = np.zeros((batch, n_ext), dtype=np.complex128)
    _synthesize_valid(a, d, h, g, out)
    return out


cdef void _analyze_periodic(
    const double complex[:, ::1] x,
    const double[:, ::1] h,
    const double[:, ::1] g,
    double complex[:, ::1] a,
    double complex[:, ::1] d,
) noexcept:
    cdef Py_ssize_t batch = x.shape[0], n = x.shape[1], taps = h.shape[1]
    cdef Py_ssize_t half = n // 2
    cdef Py_ssize_t f, m, j, t
    cdef double complex acc_a, acc_d, xv
    for f in range(batch):
        for m in range(half):
            acc_a = 0
            acc_d = 0
            for j in range(taps):
                t = (2 * m + j) % n
                xv = x[f, t]
                acc_a = acc_a + h[f, j] * xv
                acc_d = acc_d + g[f, j] * xv
            a[f, m] = acc_a
            d[f, m] = acc_d


cdef void _synthesize_periodic(
    const double complex[:, ::1] a,
    const double complex[:, ::1] d,
    const double[:, ::1] h,
    const double[:, ::1] g,
    double complex[:, ::1] out,
) noexcept:
    cdef Py_ssize_t batch = a.shape[0], half = a.shape[1], taps = h.shape[1]
    cdef Py_ssize_t n = 2 * half
    cdef Py_ssize_t f, m, j, t
    for f in range(batch):
        for j in range(taps):
            for m in range(half):
                t = (2 * m + j) % n
                out[f, t] = out[f, t] + (h[f, j] * a[f, m] + g[f, j] * d[f, m])


cdef void _analyze_valid(
    const double complex[:, ::1] x_ext,
    const double[:, ::1] h,
    const double[:, ::1] g,
    double complex[:, ::1] a,
    double complex[:, ::1] d,
) noexcept:
    cdef Py_ssize_t batch = x_ext.shape[0], taps = h.shape[1]
    cdef Py_ssize_t half = a.shape[1]
    cdef Py_ssize_t f, m, j
    cdef double complex acc_a, acc_d, xv
    for f in range(batch):
        for m in range(half):
            acc_a = 0
            acc_d = 0
            for j in range(taps):
                xv = x_ext[f, 2 * m + j]
                acc_a = acc_a + h[f, j] * xv
                acc_d = acc_d + g[f, j] * xv
            a[f, m] = acc_a
            d[f, m] = acc_d


cdef void _synthesize_valid(
    const double complex[:, ::1] a,
    const double complex[:, ::1] d,
    const double[:, ::1] h,
    const double[:, ::1] g,
    double complex[:, ::1] out,
) noexcept:
    cdef Py_ssize_t batch = a.shape[0], half = a.shape[1], taps = h.shape[1]
    cdef Py_ssize_t f, m, j, t
    for f in range(batch):
        for j in range(taps):
            for m in range(half):
                t = 2 * m + j
                out[f, t] = out[f, t] + (h[f, j] * a[f, m] + g[f, j] * d[f, m])
