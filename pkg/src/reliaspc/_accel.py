"""Backend selection for the hot numeric kernels.

Kernels are compiled with numba when it is importable and the environment
variable ``RELIASPC_DISABLE_NUMBA`` is unset (or ``0``). Otherwise the
pure-numpy implementations in :mod:`reliaspc._kernels` are used.
"""
import os

_FLAG = "RELIASPC_DISABLE_NUMBA"


def _numba_requested():
    value = os.environ.get(_FLAG, "").strip().lower()
    return value in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by " + _FLAG)
    from numba import njit as _njit
    HAVE_NUMBA = True
except ImportError:
    _njit = None
    HAVE_NUMBA = False


def njit(fn):
    """``numba.njit(cache=True)`` when available, identity otherwise.

    No ``fastmath``: the root finder depends on IEEE ordering for bitwise
    reproducibility between backends.
    """
    if _njit is None:
        return fn
    return _njit(cache=True)(fn)


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"
