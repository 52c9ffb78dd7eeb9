# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled two-pass LMMSE doubling kernel.

Mirrors ``_lmmse_py.upscale2x`` operation for operation.
"""

import numpy as np

cdef double VAR_EPS = 1e-12


cdef inline double fuse_pairs(double p1, double p2, double q1, double q2) noexcept nogil:
    cdef double xp = (p1 + p2) * 0.5
    cdef double xq = (q1 + q2) * 0.5
    cdef double u = (xp + xq) * 0.5
    cdef double dp1 = p1 - u
    cdef double dxp = xp - u
    cdef double dp2 = p2 - u
    cdef double dq1 = q1 - u
    cdef double dxq = xq - u
    cdef double dq2 = q2 - u
    cdef double var_p = (dp1 * dp1 + dxp * dxp + dp2 * dp2) / 3.0
    cdef double var_q = (dq1 * dq1 + dxq * dxq + dq2 * dq2) / 3.0
    cdef double total = var_q + var_p
    cdef double w_p
    if total < VAR_EPS:
        w_p = 0.5
    else:
        w_p = var_q / total
    return w_p * xp + (1.0 - w_p) * xq


cdef inline Py_ssize_t clamp(Py_ssize_t k, Py_ssize_t n) noexcept nogil:
    if k < 0:
        return 0
    if k >= n:
        return n - 1
    return k


def upscale2x(const double[:, ::1] g):
    cdef Py_ssize_t h = g.shape[0]
    cdef Py_ssize_t w = g.shape[1]
    cdef Py_ssize_t p, q, i, j, i0, i1, j0, j1
    # diag[p, q] is the estimate at output (2p - 1, 2q - 1)
    diag_arr = np.empty((h + 1, w + 1), dtype=np.float64)
    out_arr = np.empty((2 * h, 2 * w), dtype=np.float64)
    cdef double[:, ::1] diag = diag_arr
    cdef double[:, ::1] out = out_arr

    with nogil:
        for p in range(h + 1):
            i0 = clamp(p - 1, h)
            i1 = clamp(p, h)
            for q in range(w + 1):
                j0 = clamp(q - 1, w)
                j1 = clamp(q, w)
                diag[p, q] = fuse_pairs(g[i0, j1], g[i1, j0], g[i0, j0], g[i1, j1])

        for i in range(h):
            i1 = clamp(i + 1, h)
            for j in range(w):
                j1 = clamp(j + 1, w)
                out[2 * i, 2 * j] = g[i, j]
                out[2 * i + 1, 2 * j + 1] = diag[i + 1, j + 1]
                out[2 * i, 2 * j + 1] = fuse_pairs(g[i, j], g[i, j1], diag[i, j + 1], diag[i + 1, j + 1])
                out[2 * i + 1, 2 * j] = fuse_pairs(diag[i + 1, j], diag[i + 1, j + 1], g[i, j], g[i1, j])
    return out_arr
