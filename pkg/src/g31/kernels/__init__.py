"""Hot kernels with a numba path and a pure-numpy fallback.

The backend is picked once at import: numba when it imports cleanly and the
environment variable ``G31_DISABLE_NUMBA`` is unset (or ``0``/``false``),
numpy otherwise. Both modules expose identical functions, so callers only use
the names re-exported here. Tests reach the two modules directly to compare
them.
"""

from __future__ import annotations

import os

from . import _numpy as numpy_backend

_FALSEY = {"", "0", "false", "no", "off"}


def _numba_requested() -> bool:
    return os.environ.get("G31_DISABLE_NUMBA", "").strip().lower() in _FALSEY


numba_backend = None
if _numba_requested():
    try:
        from . import _numba as numba_backend
    except ImportError:  # numba not installed
        numba_backend = None

backend = numba_backend if numba_backend is not None else numpy_backend
BACKEND = "numba" if backend is numba_backend else "numpy"

count_pairs_within = backend.count_pairs_within
count_pairs_between = backend.count_pairs_between
degrees_into = backend.degrees_into
brute_min_edges = backend.brute_min_edges
forced_edges_table = backend.forced_edges_table
bb_task = backend.bb_task
descend = backend.descend

__all__ = [
    "BACKEND",
    "backend",
    "numba_backend",
    "numpy_backend",
    "count_pairs_within",
    "count_pairs_between",
    "degrees_into",
    "brute_min_edges",
    "forced_edges_table",
    "bb_task",
    "descend",
]
