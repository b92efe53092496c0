# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for Gaussian-integer matrix products and monomial chains."""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


def gauss_matmul(const i64[:, ::1] ar, const i64[:, ::1] ai,
                 const i64[:, ::1] br, const i64[:, ::1] bi):
    """(ar + i ai) @ (br + i bi) for int64 operands known not to overflow."""
    cdef Py_ssize_t n = ar.shape[0], m = ar.shape[1], p = br.shape[1]
    cdef Py_ssize_t i, j, k
    cdef i64 xr, xi
    cr = np.zeros((n, p), dtype=np.int64)
    ci = np.zeros((n, p), dtype=np.int64)
    cdef i64[:, ::1] crv = cr
    cdef i64[:, ::1] civ = ci
    for i in range(n):
        for k in range(m):
            xr = ar[i, k]
            xi = ai[i, k]
            if xr == 0 and xi == 0:
                continue
            for j in range(p):
                crv[i, j] += xr * br[k, j] - xi * bi[k, j]
                civ[i, j] += xr * bi[k, j] + xi * br[k, j]
    return cr, ci


def monomial_chain(const i64[:, ::1] rows, const i64[:, ::1] phases):
    """Compose monomial matrices given as (row-of-column, phase exponent of i).

    Factor ``f`` has its nonzero in column ``j`` at row ``rows[f, j]`` with
    value ``i ** phases[f, j]``; factors multiply left to right.
    """
    cdef Py_ssize_t k = rows.shape[0], n = rows.shape[1]
    cdef Py_ssize_t f, j
    cdef i64 r
    out_r = np.arange(n, dtype=np.int64)
    out_p = np.zeros(n, dtype=np.int64)
    cdef i64[::1] orv = out_r
    cdef i64[::1] opv = out_p
    for f in range(k - 1, -1, -1):
        for j in range(n):
            r = orv[j]
            opv[j] = (opv[j] + phases[f, r]) & 3
            orv[j] = rows[f, r]
    return out_r, out_p
