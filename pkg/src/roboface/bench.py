"""Micro-benchmark of the compiled kernels against the numpy fallback.

Run as ``python -m roboface.bench``.  Besides timing, every case checks
that both backends return bit-identical results; the compiled extension
is built with FP contraction off specifically to keep that true.
"""

import time

import numpy as np

from .kernels import pure
from .profile import SmoothingConfig


def _load_native():
    try:
        from .kernels import _native
    except ImportError:
        return None
    return _native


def _best_of(fn, args, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(rng):
    taus = np.asarray([0.0, 0.3, 0.7, 1.0])
    deltas = np.vstack([np.zeros(32), rng.uniform(-0.4, 0.4, (3, 32))])
    betas = rng.uniform(0.0, 1.0, 200_000)
    seq = rng.uniform(0.0, 1.0, (4_000, 52))
    kernel = SmoothingConfig(sigma=2.0).kernel()
    train = rng.uniform(0.0, 1.0, (4_000, 52))
    queries = rng.uniform(0.0, 1.0, (100, 52))
    points = rng.uniform(-1.0, 1.0, (30_000, 2))
    return [
        ("piecewise eval", "eval_piecewise_batch", (taus, deltas, betas)),
        ("gaussian smooth", "smooth_columns", (seq, kernel)),
        ("nearest lookup", "nearest_indices", (train, queries)),
        ("convex hull", "hull_indices", (points,)),
    ]


def main():
    native = _load_native()
    if native is None:
        print("compiled backend not available; timing fallback only")
    rng = np.random.default_rng(7)
    header = f"{'case':<16} {'pure':>10} {'native':>10} {'speedup':>8}  match"
    print(header)
    print("-" * len(header))
    for label, fname, args in _cases(rng):
        t_pure = _best_of(getattr(pure, fname), args)
        if native is None:
            print(f"{label:<16} {t_pure * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        t_native = _best_of(getattr(native, fname), args)
        a = np.asarray(getattr(pure, fname)(*args))
        b = np.asarray(getattr(native, fname)(*args))
        match = "exact" if np.array_equal(a, b) else f"max|d|={np.max(np.abs(a - b)):.3g}"
        print(
            f"{label:<16} {t_pure * 1e3:>8.2f}ms {t_native * 1e3:>8.2f}ms "
            f"{t_pure / t_native:>7.1f}x  {match}"
        )


if __name__ == "__main__":
    main()
