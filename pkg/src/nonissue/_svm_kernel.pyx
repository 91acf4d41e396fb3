# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels for the hinge-loss trainer.

Must stay numerically identical to the NumPy fallback: same row-major,
sequential accumulation order, plain double arithmetic.
"""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def margins(
    cnp.int64_t[::1] indptr,
    cnp.int64_t[::1] indices,
    cnp.float64_t[::1] data,
    cnp.float64_t[::1] y,
    cnp.float64_t[::1] w,
    double b,
):
    """m[i] = y[i] * (w . x_i + b) for CSR rows x_i."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    out = np.empty(n, dtype=np.float64)
    cdef cnp.float64_t[::1] mv = out
    cdef Py_ssize_t i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(indptr[i], indptr[i + 1]):
            acc = acc + data[j] * w[indices[j]]
        mv[i] = y[i] * (acc + b)
    return out


def hinge_grad(
    cnp.int64_t[::1] indptr,
    cnp.int64_t[::1] indices,
    cnp.float64_t[::1] data,
    cnp.float64_t[::1] y,
    cnp.float64_t[::1] m,
    double C,
    Py_ssize_t n_features,
):
    """Hinge-loss subgradient parts; see the NumPy twin for the contract."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    g_arr = np.zeros(n_features, dtype=np.float64)
    coef_arr = np.zeros(n, dtype=np.float64)
    cdef cnp.float64_t[::1] g = g_arr
    cdef cnp.float64_t[::1] coef = coef_arr
    cdef Py_ssize_t i, j
    cdef double c
    for i in range(n):
        if m[i] < 1.0:
            c = -C * y[i]
            coef[i] = c
            for j in range(indptr[i], indptr[i + 1]):
                g[indices[j]] = g[indices[j]] + c * data[j]
    return g_arr, coef_arr
