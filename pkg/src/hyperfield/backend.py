"""Kernel backend selection.

Hot inner loops (field-line tracing, relativistic steppers, grid updates)
are written once and compiled with numba when available.  Setting the
environment variable ``HYPERFIELD_BACKEND=numpy`` before import forces the
pure numpy/Python fallback; ``HYPERFIELD_BACKEND=numba`` demands numba and
raises if it cannot be imported.  Anything else means "numba if possible".
"""

import os

_FLAG = os.environ.get("HYPERFIELD_BACKEND", "auto").strip().lower()


def _resolve() -> bool:
    if _FLAG == "numpy":
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if _FLAG == "numba":
            raise
        return False
    return True


USE_NUMBA = _resolve()
BACKEND = "numba" if USE_NUMBA else "numpy"

if USE_NUMBA:
    from numba import njit
else:
    def njit(*args, **kwargs):
        """No-op stand-in for numba.njit in the fallback backend."""
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap
