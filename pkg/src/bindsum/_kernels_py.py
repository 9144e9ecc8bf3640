"""Pure-NumPy implementations of the hot kernels.

Used when the compiled extension is unavailable or when
``BINDSUM_KERNELS=python`` is set. Results match the compiled versions up
to floating-point summation order.
"""

import numpy as np


def sum_outer(dom, cod):
    """Sum of outer products dom[i] (x) cod[i], returned as a (d, d) array."""
    return dom.T @ cod


def sum_hadamard(dom, cod):
    """Sum of entrywise products dom[i] * cod[i], returned as a (d,) array."""
    return np.einsum("kd,kd->d", dom, cod)


def _conv_index(d):
    k = np.arange(d)
    return (k[:, None] - k[None, :]) % d


def _corr_index(d):
    k = np.arange(d)
    return (k[None, :] + k[:, None]) % d


def circ_convolve(a, b):
    """Circular convolution: out[k] = sum_i a[i] * b[(k - i) mod d]."""
    return b[_conv_index(a.shape[0])] @ a


def circ_correlate(a, b):
    """Circular correlation: out[k] = sum_i a[i] * b[(k + i) mod d]."""
    return b[_corr_index(a.shape[0])] @ a


def conv_diag_sums(mat):
    """Wrapped anti-diagonal sums: out[k] = sum_i mat[i, (k - i) mod d]."""
    d = mat.shape[0]
    rows = np.arange(d)
    return mat[rows[None, :], _conv_index(d)].sum(axis=1)


def corr_diag_sums(mat):
    """Wrapped superdiagonal sums: out[k] = sum_i mat[i, (i + k) mod d]."""
    d = mat.shape[0]
    rows = np.arange(d)
    return mat[rows[None, :], _corr_index(d)].sum(axis=1)
