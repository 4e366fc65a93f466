"""Exception types shared across the library."""


class HyperfieldError(Exception):
    """Base class for all library-specific errors."""


class ZeroDivisor(HyperfieldError, ZeroDivisionError):
    """Division (or negative power) by an element on the null cone."""


class OnCone(HyperfieldError, ValueError):
    """Operation undefined on the null cone (e.g. polar decomposition)."""


class DomainError(HyperfieldError, ValueError):
    """Argument outside the domain of the requested operation."""


class Overflow(HyperfieldError, OverflowError):
    """Result exceeds the floating-point range; reported, never saturated."""


class SingularSample(HyperfieldError, ValueError):
    """Integrand non-finite at a retained path sample; pinch the path."""


class SeedOnCone(HyperfieldError, ValueError):
    """Field-line seed lies on (or numerically at) the null cone."""


class SeedSingular(HyperfieldError, ValueError):
    """Field-line seed coincides with a pole of the field."""


class NonCausalSegment(HyperfieldError, ValueError):
    """Worldline segment is not timelike future-oriented."""


class SuperluminalFrame(HyperfieldError, ValueError):
    """Frame velocity outside |v| < 1."""


class CFLViolation(HyperfieldError, ValueError):
    """Grid step violates the dt <= dx stability condition."""


class NotUnimodular(HyperfieldError, ValueError):
    """Dilatation components do not multiply to one."""


class DegenerateElement(HyperfieldError, ValueError):
    """Polynumber with a vanishing isotropic component where forbidden."""


class ComponentNotZero(HyperfieldError, ValueError):
    """Vector not contained in the required coordinate hyperplane."""


class ConfigError(HyperfieldError, ValueError):
    """Invalid CLI configuration (unknown key, missing value, bad range)."""
