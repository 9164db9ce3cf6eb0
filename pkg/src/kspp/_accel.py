"""Switch between numba-compiled kernels and their plain Python bodies.

Set ``KSPP_DISABLE_NUMBA=1`` before importing :mod:`kspp` to run every kernel
as ordinary Python over numpy arrays.  The same path is taken automatically
when numba cannot be imported.
"""
import os

_flag = os.environ.get("KSPP_DISABLE_NUMBA", "").strip().lower()
DISABLED_BY_ENV = _flag not in ("", "0", "false", "no")

try:
    if DISABLED_BY_ENV:
        raise ImportError
    from numba import njit as _njit
    NUMBA_ENABLED = True
except ImportError:
    _njit = None
    NUMBA_ENABLED = False


def jit(fn):
    """``numba.njit(cache=True)`` when enabled, otherwise the function itself."""
    if NUMBA_ENABLED:
        return _njit(cache=True)(fn)
    return fn


def backend():
    return "numba" if NUMBA_ENABLED else "python"
