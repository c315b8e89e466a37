"""Hot loops, with a numba path and a pure-numpy fallback.

The backend is chosen once at import time from ``FQPLAB_BACKEND``
(``numba`` or ``numpy``; default ``numba`` when it imports).
"""

from __future__ import annotations

import os

from . import _numpy

BACKEND = os.environ.get("FQPLAB_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"FQPLAB_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from . import _numba as _impl
    except ImportError:  # numba missing or broken
        BACKEND = "numpy"
        _impl = _numpy
else:
    _impl = _numpy

axiom_violation = _impl.axiom_violation
sumset = _impl.sumset
additive_closure = _impl.additive_closure
hom_search = _impl.hom_search
gaussian_violation = _impl.gaussian_violation
content_search = _impl.content_search

__all__ = [
    "BACKEND",
    "axiom_violation",
    "sumset",
    "additive_closure",
    "hom_search",
    "gaussian_violation",
    "content_search",
]
