"""Kernel backend selection.

The compiled Cython module ``_ck`` implements the hot loops (BFS sweeps,
tree aggregates, index cell scans).  It is optional: when missing, or when
``TREEMETRICS_PURE=1`` is set, the numpy/python fallback in :mod:`pure` is
used instead.  Both expose the same functions; ``treemetrics bench kernels``
compares them.
"""

import os

from . import pure

if os.environ.get("TREEMETRICS_PURE") == "1":
    compiled = None
else:
    try:
        from . import _ck as compiled  # type: ignore[attr-defined]
    except ImportError:
        compiled = None

active = compiled if compiled is not None else pure

HAVE_COMPILED = compiled is not None
BACKEND_NAME = active.BACKEND_NAME

bfs = active.bfs
bfs_rows = active.bfs_rows
apsp = active.apsp
eccentricities = active.eccentricities
bfs_labeled = active.bfs_labeled
subtree_aggregates = active.subtree_aggregates
cell_scan_sum = active.cell_scan_sum
cell_scan_min = active.cell_scan_min
sum_query_full = active.sum_query_full
min_query_full = active.min_query_full
