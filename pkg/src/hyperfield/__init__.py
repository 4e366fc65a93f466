"""Hyperbolic field theory on the plane of double numbers."""

from .backend import BACKEND, USE_NUMBA
from .dnum import Double, J, ONE, PolarForm, Region, ZERO

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "USE_NUMBA",
    "Double",
    "J",
    "ONE",
    "PolarForm",
    "Region",
    "ZERO",
    "__version__",
]
