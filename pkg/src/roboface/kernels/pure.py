"""Numpy implementations of the hot kernels.

This is the fallback backend used when the compiled extension is not
built.  Semantics are pinned here; `_native.pyx` mirrors every operation
expression-for-expression so both backends produce identical floats
(the extension is compiled with FP contraction disabled).
"""

import numpy as np

BACKEND_NAME = "pure"


def eval_piecewise_batch(taus, deltas, betas):
    """Evaluate a piecewise-linear anchor map at many intensities.

    ``taus`` is the (M,) strictly increasing node vector starting at 0.0,
    ``deltas`` the (M, d) node offsets (row 0 is all zeros), ``betas`` a
    (T,) vector of query intensities in [0, 1].  Between nodes the result
    is linear; at or above the last node the last offset is held.  Exact
    node hits return the stored offset bit-exactly (the interpolation
    factor is exactly 0).
    """
    taus = np.ascontiguousarray(taus, dtype=np.float64)
    deltas = np.ascontiguousarray(deltas, dtype=np.float64)
    betas = np.ascontiguousarray(betas, dtype=np.float64)
    m = taus.shape[0]
    out = np.empty((betas.shape[0], deltas.shape[1]), dtype=np.float64)
    k = np.searchsorted(taus, betas, side="right") - 1
    held = k >= m - 1
    out[held] = deltas[m - 1]
    seg = ~held
    ks = k[seg]
    t = (betas[seg] - taus[ks]) / (taus[ks + 1] - taus[ks])
    out[seg] = deltas[ks] + t[:, None] * (deltas[ks + 1] - deltas[ks])
    return out


def smooth_columns(x, kernel):
    """Convolve each column of (T, C) ``x`` with ``kernel``, reflect-padded.

    Reflection does not repeat the edge sample: index -1 maps to 1 and
    index T maps to T-2 (folded as often as needed for short sequences).
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    kernel = np.ascontiguousarray(kernel, dtype=np.float64)
    t = x.shape[0]
    w = kernel.shape[0]
    r = (w - 1) // 2
    padded = x[_reflect_indices(t, r)]
    out = np.zeros_like(x)
    for j in range(w):
        out += kernel[j] * padded[j : j + t]
    return out


def _reflect_indices(t, r):
    idx = np.arange(-r, t + r)
    if t == 1:
        return np.zeros_like(idx)
    period = 2 * t - 2
    idx = np.mod(idx, period)
    return np.where(idx >= t, period - idx, idx)


def nearest_indices(train, queries):
    """Index of the L2-nearest row of ``train`` for every row of ``queries``.

    Ties resolve to the lowest train index.  Exhaustive scan; no index
    structure, so results are exact for any input.
    """
    train = np.ascontiguousarray(train, dtype=np.float64)
    queries = np.ascontiguousarray(queries, dtype=np.float64)
    out = np.empty(queries.shape[0], dtype=np.int64)
    for i, q in enumerate(queries):
        diff = train - q
        d2 = np.einsum("ij,ij->i", diff, diff)
        out[i] = int(np.argmin(d2))
    return out


def hull_indices(points):
    """Monotone-chain convex hull of (N, 2) ``points``.

    Returns indices into ``points`` in counter-clockwise order starting
    from the lexicographically smallest vertex.  Collinear points never
    appear as vertices; fully collinear input reduces to its two extreme
    points, a single distinct point to one index.
    """
    pts = np.ascontiguousarray(points, dtype=np.float64)
    n = pts.shape[0]
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    uniq = []
    for idx in order:
        if uniq and pts[idx, 0] == pts[uniq[-1], 0] and pts[idx, 1] == pts[uniq[-1], 1]:
            continue
        uniq.append(int(idx))
    if len(uniq) <= 2:
        return np.asarray(uniq, dtype=np.int64)

    def cross(o, a, b):
        return (pts[a, 0] - pts[o, 0]) * (pts[b, 1] - pts[o, 1]) - (
            pts[a, 1] - pts[o, 1]
        ) * (pts[b, 0] - pts[o, 0])

    lower = []
    for idx in uniq:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], idx) <= 0.0:
            lower.pop()
        lower.append(idx)
    upper = []
    for idx in reversed(uniq):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], idx) <= 0.0:
            upper.pop()
        upper.append(idx)
    return np.asarray(lower[:-1] + upper[:-1], dtype=np.int64)
