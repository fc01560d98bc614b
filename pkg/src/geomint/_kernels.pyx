# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled slice-profile kernels.

Arithmetic is ordered exactly as in ``_pykernels`` so results are
bit-identical. Do not build with -ffast-math.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport floor, sqrt, fabs

cnp.import_array()


def slice_profiles(along, cross, double tol):
    cdef const double[::1] a = np.ascontiguousarray(along, dtype=np.float64)
    cdef const double[::1] c = np.ascontiguousarray(cross, dtype=np.float64)
    cdef Py_ssize_t n = a.shape[0]
    if n == 0:
        raise ValueError("empty point set")
    cdef cnp.int64_t[::1] bins = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t lo = 0, hi = 0, b
    cdef Py_ssize_t i, m
    for i in range(n):
        b = <cnp.int64_t>floor(a[i] + 0.5 + tol)
        bins[i] = b
        if b < lo:
            lo = b
        if b > hi:
            hi = b
    m = hi - lo + 1
    counts_arr = np.zeros(m, dtype=np.float64)
    means_arr = np.zeros(m, dtype=np.float64)
    stds_arr = np.zeros(m, dtype=np.float64)
    cdef double[::1] counts = counts_arr
    cdef double[::1] means = means_arr
    cdef double[::1] stds = stds_arr
    cdef double d
    for i in range(n):
        b = bins[i] - lo
        counts[b] += 1.0
        means[b] += c[i]
    for i in range(m):
        if counts[i] > 0:
            means[i] = means[i] / counts[i]
    for i in range(n):
        b = bins[i] - lo
        d = c[i] - means[b]
        stds[b] += d * d
    for i in range(m):
        if counts[i] > 0:
            stds[i] = sqrt(stds[i] / counts[i])
    return int(lo), counts_arr, means_arr, stds_arr


def l1_aligned(p, Py_ssize_t p_lo, q, Py_ssize_t q_lo):
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    cdef Py_ssize_t np_ = pv.shape[0], nq = qv.shape[0]
    cdef Py_ssize_t lo = p_lo if p_lo < q_lo else q_lo
    cdef Py_ssize_t hi = p_lo + np_ if p_lo + np_ > q_lo + nq else q_lo + nq
    cdef Py_ssize_t b, ip, iq
    cdef double x, y, total = 0.0
    for b in range(lo, hi):
        ip = b - p_lo
        iq = b - q_lo
        x = pv[ip] if 0 <= ip < np_ else 0.0
        y = qv[iq] if 0 <= iq < nq else 0.0
        total += fabs(x - y)
    return total
