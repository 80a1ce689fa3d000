"""Backend selection for the reachability kernels.

``BIDIGRAPH_BACKEND=numpy`` forces the pure-numpy path; the default is numba
when it imports cleanly.
"""
from __future__ import annotations

import os

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

HAVE_NUMBA = numba is not None


def requested_backend() -> str:
    value = os.environ.get("BIDIGRAPH_BACKEND", "").strip().lower()
    if value in ("numpy", "python", "0", "off"):
        return "numpy"
    if value == "numba" and not HAVE_NUMBA:
        raise RuntimeError("BIDIGRAPH_BACKEND=numba but numba is not installed")
    return "numba" if HAVE_NUMBA else "numpy"


def njit(func):
    if numba is None:
        return func
    return numba.njit(cache=True, nogil=True)(func)
