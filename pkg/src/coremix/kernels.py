"""Backend dispatch for the hot graph kernels.

The compiled extension (``coremix._speedups``, Cython) is used when it was
built; otherwise the pure NumPy/SciPy fallback (``coremix._kernels_py``)
takes over.  Set ``COREMIX_PURE=1`` to force the fallback, e.g. to run the
benchmark comparison or to debug without a compiler.
"""

from __future__ import annotations

import os

from coremix import _kernels_py

if os.environ.get("COREMIX_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "pure"
else:
    try:
        from coremix import _speedups as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "pure"

component_labels = _impl.component_labels
bfs_distances = _impl.bfs_distances
two_core_mask = _impl.two_core_mask
walk_path = _impl.walk_path
cheeger_scan = _impl.cheeger_scan
