"""Hot inner-loop kernels with a compiled core and a pure-Python fallback.

Two operations dominate the navigation benchmark's runtime: folding every
sensed local map into the global observed layer (tens of thousands of
order-dependent per-cell fusions per episode) and re-planning with
Dijkstra after every action. Both are implemented twice:

* ``_core`` - Cython extension (built by ``setup.py``; optional),
* ``_purepy`` - numpy/heapq fallback with identical semantics.

The backend is selected once at import time. Set ``OCCUPAINT_KERNELS`` to
``compiled`` or ``python`` to force one (``compiled`` raises if the
extension is missing); the default ``auto`` prefers the extension. Both
backends produce bit-identical results; ``benchmarks/bench_kernels.py``
compares their speed.
"""

import os

_requested = os.environ.get("OCCUPAINT_KERNELS", "auto")

if _requested == "python":
    from . import _purepy as _impl

    BACKEND = "python"
elif _requested in ("auto", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _purepy as _impl

        BACKEND = "python"
else:
    raise ValueError(
        f"OCCUPAINT_KERNELS={_requested!r}: expected 'auto', 'compiled' or 'python'"
    )

fuse_observations = _impl.fuse_observations
dijkstra_grid = _impl.dijkstra_grid

__all__ = ["BACKEND", "fuse_observations", "dijkstra_grid"]
