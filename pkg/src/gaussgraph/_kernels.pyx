# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled block kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


def block_determinants(sigma):
    cdef const double[:, ::1] s = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0] // 2
    out = np.empty((n, n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, k
    for j in range(n):
        for k in range(n):
            o[j, k] = s[2*j, 2*k] * s[2*j+1, 2*k+1] - s[2*j, 2*k+1] * s[2*j+1, 2*k]
    return out


def block_norms(sigma):
    cdef const double[:, ::1] s = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef Py_ssize_t n = s.shape[0] // 2
    out = np.empty((n, n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, k
    cdef double a, b, c, d
    for j in range(n):
        for k in range(n):
            a = s[2*j, 2*k]
            b = s[2*j, 2*k+1]
            c = s[2*j+1, 2*k]
            d = s[2*j+1, 2*k+1]
            o[j, k] = sqrt(a*a + b*b + c*c + d*d)
    return out


def apply_local(sigma, blocks):
    cdef const double[:, ::1] s = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef const double[:, :, ::1] g = np.ascontiguousarray(blocks, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    out = np.empty((2*n, 2*n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, k, a, c
    cdef double t0, t1
    cdef double tmp[2][2]
    for j in range(n):
        for k in range(n):
            # tmp = S_j sigma_jk
            for a in range(2):
                tmp[a][0] = g[j, a, 0] * s[2*j, 2*k] + g[j, a, 1] * s[2*j+1, 2*k]
                tmp[a][1] = g[j, a, 0] * s[2*j, 2*k+1] + g[j, a, 1] * s[2*j+1, 2*k+1]
            for a in range(2):
                for c in range(2):
                    o[2*j+a, 2*k+c] = tmp[a][0] * g[k, c, 0] + tmp[a][1] * g[k, c, 1]
    return out


def qq_correlations(sigma, blocks):
    cdef const double[:, ::1] s = np.ascontiguousarray(sigma, dtype=np.float64)
    cdef const double[:, :, ::1] g = np.ascontiguousarray(blocks, dtype=np.float64)
    cdef Py_ssize_t n = g.shape[0]
    out = np.empty((n, n))
    cdef double[:, ::1] o = out
    cdef Py_ssize_t j, k
    cdef double x0, x1
    for j in range(n):
        for k in range(n):
            x0 = g[j, 0, 0] * s[2*j, 2*k] + g[j, 0, 1] * s[2*j+1, 2*k]
            x1 = g[j, 0, 0] * s[2*j, 2*k+1] + g[j, 0, 1] * s[2*j+1, 2*k+1]
            o[j, k] = x0 * g[k, 0, 0] + x1 * g[k, 0, 1]
    return out
