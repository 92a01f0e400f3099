"""Optional numba acceleration.

Kernels are written once as plain Python over numpy arrays.  When numba is
importable and ``MPGSD_DISABLE_JIT`` is unset (or ``0``), they are compiled
with ``njit``; otherwise the very same functions run interpreted.  Both paths
consume identical inputs (including pre-drawn random numbers), so results are
bit-identical across backends.
"""
import os

_flag = os.environ.get("MPGSD_DISABLE_JIT", "").strip().lower()
JIT_DISABLED = _flag not in ("", "0", "false", "no")

try:
    from numba import njit as _njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    _njit = None

USING_NUMBA = _njit is not None and not JIT_DISABLED


def kernel(func):
    if USING_NUMBA:
        return _njit(cache=True, nogil=True)(func)
    return func
