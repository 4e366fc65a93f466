"""Algebra of double (split-complex) numbers ``h = t + j x`` with ``j*j = 1``.

The plane carries a null cone ``t = +-x`` of zero divisors splitting it into
four open quadrants.  Quadrant I is the right sector ``t > |x|``; II, III, IV
follow counterclockwise (top, left, bottom).  Every off-cone element has an
exponential form ``h = eps * rho * exp(j*psi)`` where ``eps`` is the quadrant
sign factor (1, j, -1, -j), ``rho = |t^2 - x^2|^(1/2)`` and ``psi`` is the
hyperbolic angle.

The isotropic basis ``e1 = (1+j)/2, e2 = (1-j)/2`` diagonalises the algebra:
in coordinates ``xi1 = t + x, xi2 = t - x`` every ring operation acts
componentwise, which several routines below exploit.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, OnCone, Overflow, ZeroDivisor

_EXP_MAX = 709.782712893384  # log of the largest finite double


class Region(enum.Enum):
    """Location of a point relative to the null cone."""

    QUADRANT_I = "I"
    QUADRANT_II = "II"
    QUADRANT_III = "III"
    QUADRANT_IV = "IV"
    CONE_PLUS = "cone+"   # xi2 = 0, multiples of e1 (line t = x)
    CONE_MINUS = "cone-"  # xi1 = 0, multiples of e2 (line t = -x)
    ORIGIN = "origin"


@dataclass(frozen=True, slots=True)
class Double:
    """Immutable double number with time-like part ``t`` and space-like ``x``."""

    t: float = 0.0
    x: float = 0.0

    def __add__(self, other):
        other = _coerce(other)
        return Double(self.t + other.t, self.x + other.x)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Double(self.t - other.t, self.x - other.x)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return Double(
            self.t * other.t + self.x * other.x,
            self.t * other.x + self.x * other.t,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return Double(-self.t, -self.x)

    def __abs__(self):
        """Euclidean magnitude, used only for step control and reporting."""
        return math.hypot(self.t, self.x)

    def __repr__(self):
        return f"Double({self.t!r}, {self.x!r})"


def _coerce(value) -> Double:
    if isinstance(value, Double):
        return value
    if isinstance(value, (int, float)):
        return Double(float(value), 0.0)
    raise TypeError(f"cannot interpret {value!r} as a double number")


ZERO = Double(0.0, 0.0)
ONE = Double(1.0, 0.0)
J = Double(0.0, 1.0)


def norm_sq(h: Double) -> float:
    """Pseudo-Euclidean square ``t^2 - x^2``; no absolute value applied."""
    return h.t * h.t - h.x * h.x


def conj(h: Double) -> Double:
    """Reflection across the time axis; swaps isotropic components."""
    return Double(h.t, -h.x)


def to_isotropic(h: Double) -> tuple[float, float]:
    """Advanced/retarded coordinates ``(t + x, t - x)``."""
    return (h.t + h.x, h.t - h.x)


def from_isotropic(xi1: float, xi2: float) -> Double:
    return Double((xi1 + xi2) / 2.0, (xi1 - xi2) / 2.0)


def mul(a: Double, b: Double) -> Double:
    return a * b


def div(a: Double, b: Double) -> Double:
    """Division via ``a * conj(b) / norm_sq(b)``.

    The divisor check is exact, not tolerance-based: any element with a zero
    isotropic coordinate is a zero divisor and has no inverse.
    """
    xi1, xi2 = to_isotropic(b)
    if xi1 == 0.0 or xi2 == 0.0:
        raise ZeroDivisor(f"division by cone element {b}")
    n = norm_sq(b)
    num = a * conj(b)
    return Double(num.t / n, num.x / n)


_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": mul,
    "div": div,
}


def arithmetic(a: Double, b: Double, op: str) -> Double:
    """Named dispatch over the four ring operations."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}; expected one of {sorted(_OPS)}")
    return fn(a, b)


def is_on_cone(h: Double, tol: float = 0.0) -> bool:
    """True when an isotropic coordinate vanishes.

    ``tol = 0`` is the exact check used for constructed values.  For computed
    values pass a tolerance, e.g. ``cone_tolerance(h)``.
    """
    xi1, xi2 = to_isotropic(h)
    if tol == 0.0:
        return xi1 == 0.0 or xi2 == 0.0
    return abs(xi1) <= tol or abs(xi2) <= tol


def cone_tolerance(h: Double, rel: float = 1e-14) -> float:
    """Default tolerance for detecting computed values near the cone."""
    xi1, xi2 = to_isotropic(h)
    return rel * max(1.0, abs(xi1), abs(xi2))


def region(h: Double) -> Region:
    """Classify by the sign pattern of the isotropic coordinates."""
    xi1, xi2 = to_isotropic(h)
    if xi1 == 0.0 and xi2 == 0.0:
        return Region.ORIGIN
    if xi2 == 0.0:
        return Region.CONE_PLUS
    if xi1 == 0.0:
        return Region.CONE_MINUS
    if xi1 > 0.0:
        return Region.QUADRANT_I if xi2 > 0.0 else Region.QUADRANT_II
    return Region.QUADRANT_IV if xi2 > 0.0 else Region.QUADRANT_III


_SIGN_FACTOR = {
    Region.QUADRANT_I: ONE,
    Region.QUADRANT_II: J,
    Region.QUADRANT_III: -ONE,
    Region.QUADRANT_IV: -J,
}


def sign_factor(reg: Region) -> Double:
    """Quadrant sign factor eps with ``h = eps * rho * exp(j psi)``."""
    try:
        return _SIGN_FACTOR[reg]
    except KeyError:
        raise OnCone(f"no sign factor for region {reg}")


@dataclass(frozen=True, slots=True)
class PolarForm:
    """Exponential representation ``eps * rho * exp(j psi)`` of an off-cone point."""

    region: Region
    rho: float
    psi: float


def polar_decompose(h: Double) -> PolarForm:
    """Hyperbolic modulus and angle; undefined on the cone.

    ``psi = artanh(x/t)`` in quadrants I/III and ``artanh(t/x)`` in II/IV,
    which collapses to the single expression ``log(|xi1/xi2|)/2``.
    """
    xi1, xi2 = to_isotropic(h)
    if xi1 == 0.0 or xi2 == 0.0:
        raise OnCone(f"polar form undefined on the cone: {h}")
    reg = region(h)
    rho = math.sqrt(abs(xi1 * xi2))
    psi = 0.5 * math.log(abs(xi1 / xi2))
    return PolarForm(reg, rho, psi)


def from_polar(polar: PolarForm) -> Double:
    eps = sign_factor(polar.region)
    return eps * Double(polar.rho * math.cosh(polar.psi), polar.rho * math.sinh(polar.psi))


def exp(h: Double) -> Double:
    """Componentwise exponential in the isotropic basis; image is quadrant I."""
    xi1, xi2 = to_isotropic(h)
    if xi1 > _EXP_MAX or xi2 > _EXP_MAX:
        raise Overflow(f"exp overflows at {h}")
    return from_isotropic(math.exp(xi1), math.exp(xi2))


def ln(h: Double) -> Double:
    """Inverse of :func:`exp`, defined strictly inside quadrant I.

    For other quadrants the additive constant ``ln eps`` leaves the algebra;
    use :func:`ln_with_region` to carry the quadrant tag separately.
    """
    xi1, xi2 = to_isotropic(h)
    if not (xi1 > 0.0 and xi2 > 0.0):
        raise DomainError(f"ln restricted to the open first quadrant, got {h}")
    return from_isotropic(math.log(xi1), math.log(xi2))


def ln_with_region(h: Double) -> tuple[Region, Double]:
    """Quadrant tag plus ``ln`` of the quadrant-I representative ``h / eps``."""
    reg = region(h)
    eps = sign_factor(reg)  # raises OnCone off the four quadrants
    return reg, ln(div(h, eps))


def pow_int(h: Double, n: int) -> Double:
    """Integer power by binary exponentiation; cone points stay on the cone."""
    if n == 0:
        return ONE
    if n < 0:
        return div(ONE, pow_int(h, -n))
    result = ONE
    base = h
    k = n
    while k:
        if k & 1:
            result = result * base
        base = base * base
        k >>= 1
    return result


def pow_real(h: Double, alpha: float) -> Double:
    """Real power ``exp(alpha * ln h)``, quadrant I only."""
    xi1, xi2 = to_isotropic(h)
    if not (xi1 > 0.0 and xi2 > 0.0):
        raise DomainError(f"real power restricted to quadrant I, got {h}")
    return from_isotropic(xi1**alpha, xi2**alpha)


def _real_root(value: float, n: int) -> float:
    if value == 0.0:
        return 0.0
    if value < 0.0:
        return -((-value) ** (1.0 / n))
    return value ** (1.0 / n)


def sqrt_all(h: Double, n: int = 2) -> list[Double]:
    """Every double number ``r`` with ``r**n == h``.

    Even-order roots exist only in the closed first quadrant and are 4-valued
    in its interior (one root per quadrant, returned in order I, II, III, IV).
    Odd-order roots are single-valued everywhere.
    """
    if n < 2:
        raise ValueError("root order must be >= 2")
    xi1, xi2 = to_isotropic(h)
    if n % 2 == 1:
        return [from_isotropic(_real_root(xi1, n), _real_root(xi2, n))]
    if xi1 < 0.0 or xi2 < 0.0:
        raise DomainError(f"even-order root requires closed quadrant I, got {h}")
    r1 = xi1 ** (1.0 / n)
    r2 = xi2 ** (1.0 / n)
    roots = []
    seen = set()
    for s1, s2 in ((1.0, 1.0), (1.0, -1.0), (-1.0, -1.0), (-1.0, 1.0)):
        candidate = from_isotropic(s1 * r1, s2 * r2)
        key = (candidate.t, candidate.x)
        if key not in seen:
            seen.add(key)
            roots.append(candidate)
    return roots


def zhukowskij(h: Double) -> Double:
    """``Z(h) = (h + 1/h) / 2``; conformality breaks at ``+-1, +-j``."""
    return Double(0.5, 0.0) * (h + div(ONE, h))
