# cython: language_level=3
"""Compiled hot kernels.

Every function mirrors its counterpart in ``roboface.kernels.pure``
expression-for-expression; the build disables FP contraction so the two
backends return identical floats.
"""

import numpy as np

cimport cython
cimport numpy as cnp

cnp.import_array()

BACKEND_NAME = "native"


@cython.boundscheck(False)
@cython.wraparound(False)
def eval_piecewise_batch(taus, deltas, betas):
    cdef const double[::1] tv = np.ascontiguousarray(taus, dtype=np.float64)
    cdef const double[:, ::1] dv = np.ascontiguousarray(deltas, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(betas, dtype=np.float64)
    cdef Py_ssize_t m = tv.shape[0]
    cdef Py_ssize_t d = dv.shape[1]
    cdef Py_ssize_t t = bv.shape[0]
    out_arr = np.empty((t, d), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, k, lo, hi, mid
    cdef double beta, frac
    for i in range(t):
        beta = bv[i]
        # upper bound, matching np.searchsorted(side="right") - 1
        lo = 0
        hi = m
        while lo < hi:
            mid = (lo + hi) // 2
            if tv[mid] <= beta:
                lo = mid + 1
            else:
                hi = mid
        k = lo - 1
        if k >= m - 1:
            for j in range(d):
                out[i, j] = dv[m - 1, j]
        else:
            frac = (beta - tv[k]) / (tv[k + 1] - tv[k])
            for j in range(d):
                out[i, j] = dv[k, j] + frac * (dv[k + 1, j] - dv[k, j])
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def smooth_columns(x, kernel):
    cdef const double[:, ::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef const double[::1] kv = np.ascontiguousarray(kernel, dtype=np.float64)
    cdef Py_ssize_t t = xv.shape[0]
    cdef Py_ssize_t c = xv.shape[1]
    cdef Py_ssize_t w = kv.shape[0]
    cdef Py_ssize_t r = (w - 1) // 2
    out_arr = np.zeros((t, c), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, q, src
    cdef Py_ssize_t period = 2 * t - 2
    for j in range(w):
        for i in range(t):
            if t == 1:
                src = 0
            else:
                src = (i - r + j) % period
                if src >= t:
                    src = period - src
            for q in range(c):
                out[i, q] += kv[j] * xv[src, q]
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
def nearest_indices(train, queries):
    cdef const double[:, ::1] tr = np.ascontiguousarray(train, dtype=np.float64)
    cdef const double[:, ::1] qr = np.ascontiguousarray(queries, dtype=np.float64)
    cdef Py_ssize_t n = tr.shape[0]
    cdef Py_ssize_t c = tr.shape[1]
    cdef Py_ssize_t t = qr.shape[0]
    out_arr = np.empty(t, dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    cdef Py_ssize_t i, j, k, best
    cdef double bestd, dist, diff
    for i in range(t):
        best = 0
        bestd = np.inf
        for j in range(n):
            dist = 0.0
            for k in range(c):
                diff = tr[j, k] - qr[i, k]
                dist += diff * diff
            if dist < bestd:
                bestd = dist
                best = j
        out[i] = best
    return out_arr


@cython.boundscheck(False)
@cython.wraparound(False)
cdef inline double _cross(const double[:, ::1] pts, Py_ssize_t o, Py_ssize_t a, Py_ssize_t b):
    return (pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1]) - (
        pts[a, 1] - pts[o, 1]
    ) * (pts[b, 0] - pts[o, 0])


@cython.boundscheck(False)
@cython.wraparound(False)
def hull_indices(points):
    pts_arr = np.ascontiguousarray(points, dtype=np.float64)
    cdef const double[:, ::1] pts = pts_arr
    cdef Py_ssize_t n = pts.shape[0]
    order_arr = np.lexsort((pts_arr[:, 1], pts_arr[:, 0])).astype(np.int64)
    cdef cnp.int64_t[::1] order = order_arr
    uniq_arr = np.empty(n, dtype=np.int64)
    cdef cnp.int64_t[::1] uniq = uniq_arr
    cdef Py_ssize_t nu = 0
    cdef Py_ssize_t i, idx
    for i in range(n):
        idx = order[i]
        if nu > 0 and pts[idx, 0] == pts[uniq[nu - 1], 0] and pts[idx, 1] == pts[uniq[nu - 1], 1]:
            continue
        uniq[nu] = idx
        nu += 1
    if nu <= 2:
        return uniq_arr[:nu].copy()

    lower_arr = np.empty(nu, dtype=np.int64)
    upper_arr = np.empty(nu, dtype=np.int64)
    cdef cnp.int64_t[::1] lower = lower_arr
    cdef cnp.int64_t[::1] upper = upper_arr
    cdef Py_ssize_t nl = 0, nup = 0
    for i in range(nu):
        idx = uniq[i]
        while nl >= 2 and _cross(pts, lower[nl - 2], lower[nl - 1], idx) <= 0.0:
            nl -= 1
        lower[nl] = idx
        nl += 1
    for i in range(nu - 1, -1, -1):
        idx = uniq[i]
        while nup >= 2 and _cross(pts, upper[nup - 2], upper[nup - 1], idx) <= 0.0:
            nup -= 1
        upper[nup] = idx
        nup += 1
    return np.concatenate([lower_arr[: nl - 1], upper_arr[: nup - 1]])
