"""Hot-kernel backend selection.

The compiled extension (`roboface.kernels._native`, built from Cython) is
preferred when importable; the numpy fallback in `pure` is used otherwise.
Set ``ROBOFACE_BACKEND=pure`` to force the fallback, e.g. to compare the
two with ``python -m roboface.bench``.
"""

import os

from . import pure as _pure

_impl = _pure
if os.environ.get("ROBOFACE_BACKEND", "").lower() not in ("pure", "py", "python"):
    try:
        from . import _native as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = getattr(_impl, "BACKEND_NAME", "pure")

eval_piecewise_batch = _impl.eval_piecewise_batch
smooth_columns = _impl.smooth_columns
nearest_indices = _impl.nearest_indices
hull_indices = _impl.hull_indices


def available_backends():
    """Name -> module for every importable backend (for benchmarks/tests)."""
    found = {"pure": _pure}
    try:
        from . import _native

        found["native"] = _native
    except ImportError:
        pass
    return found
