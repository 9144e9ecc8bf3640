# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops for binding accumulation and circular operators.

Float64 only; complex inputs are handled by the NumPy fallback in
``bindsum._kernels_py``. Each function mirrors its fallback twin exactly
(same arguments, same result up to summation order).
"""

import numpy as np


def sum_outer(double[:, ::1] dom, double[:, ::1] cod):
    """Sum of outer products dom[i] (x) cod[i], returned as a (d, d) array."""
    cdef Py_ssize_t k = dom.shape[0]
    cdef Py_ssize_t d = dom.shape[1]
    out_arr = np.zeros((d, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, r, c
    cdef double a
    for i in range(k):
        for r in range(d):
            a = dom[i, r]
            if a != 0.0:
                for c in range(d):
                    out[r, c] += a * cod[i, c]
    return out_arr


def sum_hadamard(double[:, ::1] dom, double[:, ::1] cod):
    """Sum of entrywise products dom[i] * cod[i], returned as a (d,) array."""
    cdef Py_ssize_t k = dom.shape[0]
    cdef Py_ssize_t d = dom.shape[1]
    out_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, c
    for i in range(k):
        for c in range(d):
            out[c] += dom[i, c] * cod[i, c]
    return out_arr


def circ_convolve(double[::1] a, double[::1] b):
    """Circular convolution: out[k] = sum_i a[i] * b[(k - i) mod d]."""
    cdef Py_ssize_t d = a.shape[0]
    out_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc
    for k in range(d):
        acc = 0.0
        for i in range(d):
            j = k - i
            if j < 0:
                j += d
            acc += a[i] * b[j]
        out[k] = acc
    return out_arr


def circ_correlate(double[::1] a, double[::1] b):
    """Circular correlation: out[k] = sum_i a[i] * b[(k + i) mod d]."""
    cdef Py_ssize_t d = a.shape[0]
    out_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc
    for k in range(d):
        acc = 0.0
        for i in range(d):
            j = k + i
            if j >= d:
                j -= d
            acc += a[i] * b[j]
        out[k] = acc
    return out_arr


def conv_diag_sums(double[:, ::1] mat):
    """Wrapped anti-diagonal sums: out[k] = sum_i mat[i, (k - i) mod d]."""
    cdef Py_ssize_t d = mat.shape[0]
    out_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc
    for k in range(d):
        acc = 0.0
        for i in range(d):
            j = k - i
            if j < 0:
                j += d
            acc += mat[i, j]
        out[k] = acc
    return out_arr


def corr_diag_sums(double[:, ::1] mat):
    """Wrapped superdiagonal sums: out[k] = sum_i mat[i, (i + k) mod d]."""
    cdef Py_ssize_t d = mat.shape[0]
    out_arr = np.zeros(d, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t k, i, j
    cdef double acc
    for k in range(d):
        acc = 0.0
        for i in range(d):
            j = i + k
            if j >= d:
                j -= d
            acc += mat[i, j]
        out[k] = acc
    return out_arr
