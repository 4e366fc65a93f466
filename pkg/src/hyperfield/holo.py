"""h-holomorphic calculus on the double plane.

Everything here is finite-difference based: jets of componentwise partials,
the hyperbolic Wirtinger pair, Cauchy-Riemann and wave-equation residuals,
conformal factors, conformal-isotropic maps and the Klein-Gordon residual.
Residuals are normalized by max(1, |grad F|) so tolerances are scale-free.

Derivatives along the cone directions are not defined; every stencil routine
demands an off-cone ball of radius twice its step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import dnum
from .dnum import Double, J, ONE, conj, div, exp, ln, norm_sq, pow_int, zhukowskij
from .errors import DomainError

_EPS = 2.220446049250313e-16
STEP1 = _EPS ** (1 / 3)  # first-derivative default, scaled by point size


def default_step(h: Double) -> float:
    return STEP1 * max(1.0, abs(h.t), abs(h.x))


def default_step2(h: Double) -> float:
    """Second-derivative stencils use the square root of the base step."""
    return math.sqrt(default_step(h))


def _always(_: Double) -> bool:
    return True


def offcone_domain(margin_rel: float = 1e-9) -> Callable[[Double], bool]:
    def inside(h: Double) -> bool:
        xi1, xi2 = dnum.to_isotropic(h)
        m = margin_rel * max(1.0, abs(xi1), abs(xi2))
        return abs(xi1) > m and abs(xi2) > m

    return inside


def quadrant_I_domain(h: Double) -> bool:
    xi1, xi2 = dnum.to_isotropic(h)
    return xi1 > 0.0 and xi2 > 0.0


@dataclass(frozen=True)
class HFunction:
    """Double-valued map with optional analytic derivative and a domain test."""

    eval: Callable[[Double], Double]
    analytic_deriv: Optional[Callable[[Double], Double]] = None
    domain: Callable[[Double], bool] = field(default=_always)
    name: str = ""

    def __call__(self, h: Double) -> Double:
        return self.eval(h)


def _require_stencil(f: HFunction, h: Double, radius: float):
    # directional derivatives along the cone are undefined, so the whole
    # stencil ball must stay clear of it
    xi1, xi2 = dnum.to_isotropic(h)
    if min(abs(xi1), abs(xi2)) <= radius * math.sqrt(2.0):
        raise DomainError(
            f"stencil of radius {radius} touches the cone at {h}"
        )
    for probe in (
        h,
        Double(h.t + radius, h.x),
        Double(h.t - radius, h.x),
        Double(h.t, h.x + radius),
        Double(h.t, h.x - radius),
    ):
        if not f.domain(probe):
            raise DomainError(
                f"stencil of radius {radius} leaves the domain of {f.name or f}"
            )


@dataclass(frozen=True)
class Jet:
    """Value plus componentwise partials of F with respect to t and x."""

    value: Double
    d_t: Double
    d_x: Double

    @classmethod
    def at(cls, f: HFunction, h: Double, step: float | None = None) -> "Jet":
        step = default_step(h) if step is None else step
        _require_stencil(f, h, 2 * step)
        ft_p = f(Double(h.t + step, h.x))
        ft_m = f(Double(h.t - step, h.x))
        fx_p = f(Double(h.t, h.x + step))
        fx_m = f(Double(h.t, h.x - step))
        inv = 1.0 / (2.0 * step)
        return cls(
            value=f(h),
            d_t=Double((ft_p.t - ft_m.t) * inv, (ft_p.x - ft_m.x) * inv),
            d_x=Double((fx_p.t - fx_m.t) * inv, (fx_p.x - fx_m.x) * inv),
        )


def wirtinger(jet: Jet) -> tuple[Double, Double]:
    """Hyperbolic Wirtinger pair (d/dh, d/dhbar) from a componentwise jet."""
    half = Double(0.5, 0.0)
    d_h = half * (jet.d_t + J * jet.d_x)
    d_hbar = half * (jet.d_t - J * jet.d_x)
    return d_h, d_hbar


def derivative(f: HFunction, h: Double, step: float | None = None) -> Double:
    """dF/dh: the analytic derivative when present, else the Wirtinger value."""
    if f.analytic_deriv is not None:
        return f.analytic_deriv(h)
    d_h, _ = wirtinger(Jet.at(f, h, step))
    return d_h


def _grad_scale(jet: Jet) -> float:
    return max(
        1.0,
        abs(jet.d_t.t),
        abs(jet.d_t.x),
        abs(jet.d_x.t),
        abs(jet.d_x.x),
    )


def cr_residual(f: HFunction, h: Double, step: float | None = None) -> float:
    """max(|U_t - V_x|, |U_x - V_t|), scale-free; ~0 for h-holomorphic f."""
    step = default_step(h) if step is None else step
    jet = Jet.at(f, h, step)
    r1 = jet.d_t.t - jet.d_x.x  # U,t - V,x
    r2 = jet.d_t.x - jet.d_x.t  # V,t - U,x
    return max(abs(r1), abs(r2)) / _grad_scale(jet)


def wave_residual(f: HFunction, h: Double, step: float | None = None) -> float:
    """Five-point estimate of max(|box U|, |box V|) with box = d_tt - d_xx."""
    step = default_step2(h) if step is None else step
    _require_stencil(f, h, 2 * step)
    center = f(h)
    ft_p = f(Double(h.t + step, h.x))
    ft_m = f(Double(h.t - step, h.x))
    fx_p = f(Double(h.t, h.x + step))
    fx_m = f(Double(h.t, h.x - step))
    inv = 1.0 / (step * step)
    box_u = (ft_p.t - 2.0 * center.t + ft_m.t) * inv - (
        fx_p.t - 2.0 * center.t + fx_m.t
    ) * inv
    box_v = (ft_p.x - 2.0 * center.x + ft_m.x) * inv - (
        fx_p.x - 2.0 * center.x + fx_m.x
    ) * inv
    scale = max(
        1.0,
        abs(ft_p.t - ft_m.t) / (2 * step),
        abs(ft_p.x - ft_m.x) / (2 * step),
        abs(fx_p.t - fx_m.t) / (2 * step),
        abs(fx_p.x - fx_m.x) / (2 * step),
    )
    return max(abs(box_u), abs(box_v)) / scale


def conformal_factor(f: HFunction, h: Double, step: float | None = None) -> float:
    """norm_sq of dF/dh: the Jacobian determinant of f as a plane map."""
    return norm_sq(derivative(f, h, step))


def level_orthogonality(f: HFunction, h: Double, step: float | None = None) -> float:
    """Pseudo-Euclidean inner product U_t V_t - U_x V_x of the two gradients."""
    jet = Jet.at(f, h, step)
    return (jet.d_t.t * jet.d_t.x - jet.d_x.t * jet.d_x.x) / _grad_scale(jet) ** 2


def klein_gordon_residual(
    f: HFunction,
    mu: float,
    source: Callable[[Double], Double] | None,
    h: Double,
    step: float | None = None,
) -> Double:
    """(box + mu^2) F + J, componentwise; ~0 for massless sourceless h-maps."""
    step = default_step2(h) if step is None else step
    _require_stencil(f, h, 2 * step)
    center = f(h)
    ft_p = f(Double(h.t + step, h.x))
    ft_m = f(Double(h.t - step, h.x))
    fx_p = f(Double(h.t, h.x + step))
    fx_m = f(Double(h.t, h.x - step))
    inv = 1.0 / (step * step)
    box = Double(
        (ft_p.t - 2 * center.t + ft_m.t) * inv - (fx_p.t - 2 * center.t + fx_m.t) * inv,
        (ft_p.x - 2 * center.x + ft_m.x) * inv - (fx_p.x - 2 * center.x + fx_m.x) * inv,
    )
    total = box + Double(mu * mu, 0.0) * center
    if source is not None:
        total = total + source(h)
    return total


@dataclass(frozen=True)
class ConformalIsotropicMap:
    """Plane map xi1' = f1(xi1), xi2' = f2(xi2); conformal but generally
    not h-holomorphic unless f1 == f2."""

    f1: Callable[[float], float]
    f2: Callable[[float], float]
    d_f1: Optional[Callable[[float], float]] = None
    d_f2: Optional[Callable[[float], float]] = None

    def __call__(self, h: Double) -> Double:
        xi1, xi2 = dnum.to_isotropic(h)
        return dnum.from_isotropic(self.f1(xi1), self.f2(xi2))

    def _d1(self, u: float) -> float:
        if self.d_f1 is not None:
            return self.d_f1(u)
        s = STEP1 * max(1.0, abs(u))
        return (self.f1(u + s) - self.f1(u - s)) / (2 * s)

    def _d2(self, v: float) -> float:
        if self.d_f2 is not None:
            return self.d_f2(v)
        s = STEP1 * max(1.0, abs(v))
        return (self.f2(v + s) - self.f2(v - s)) / (2 * s)

    def metric_factor(self, h: Double) -> float:
        """Pullback factor f1'(xi1) * f2'(xi2) of the pseudo-metric."""
        xi1, xi2 = dnum.to_isotropic(h)
        return self._d1(xi1) * self._d2(xi2)

    def as_hfunction(self, domain: Callable[[Double], bool] = _always) -> HFunction:
        return HFunction(eval=self.__call__, domain=domain, name="conformal-isotropic")


def conformal_isotropic(
    f1: Callable[[float], float],
    f2: Callable[[float], float],
    d_f1: Optional[Callable[[float], float]] = None,
    d_f2: Optional[Callable[[float], float]] = None,
) -> ConformalIsotropicMap:
    return ConformalIsotropicMap(f1, f2, d_f1, d_f2)


def jacobian_det(f: HFunction, h: Double, step: float | None = None) -> float:
    """Finite-difference Jacobian determinant oracle for the conformal factor."""
    jet = Jet.at(f, h, step)
    return jet.d_t.t * jet.d_x.x - jet.d_x.t * jet.d_t.x


def symmetry_residual(f: Callable[[Double], Double], h: Double) -> float:
    """Reflection-equivariance defect |F(conj h) - conj(F h)|.

    Vanishes for every map analytic in h.  This is the check that separates
    true h-analytic maps from general conformal-isotropic ones: the latter
    satisfy the first-order Cauchy-Riemann conditions pointwise (their
    isotropic Jacobian is diagonal), so cr_residual cannot see the asymmetry
    between the two component functions.
    """
    return abs(f(conj(h)) - conj(f(h)))


def compose(outer: HFunction, inner: HFunction, name: str = "") -> HFunction:
    deriv = None
    if outer.analytic_deriv is not None and inner.analytic_deriv is not None:
        def deriv(h):
            return outer.analytic_deriv(inner.eval(h)) * inner.analytic_deriv(h)

    def domain(h):
        return inner.domain(h) and outer.domain(inner.eval(h))

    return HFunction(
        eval=lambda h: outer.eval(inner.eval(h)),
        analytic_deriv=deriv,
        domain=domain,
        name=name or f"{outer.name}*{inner.name}",
    )


def conj_composed(f: HFunction, name: str = "") -> HFunction:
    """Anti-holomorphic companion F(conj(h)); the only anti-analytic path."""
    return HFunction(
        eval=lambda h: f.eval(conj(h)),
        domain=lambda h: f.domain(conj(h)),
        name=name or f"{f.name}-anti",
    )


def _power_hfunction(n: int) -> HFunction:
    if n >= 0:
        dom = _always
    else:
        dom = offcone_domain()
    return HFunction(
        eval=lambda h, n=n: pow_int(h, n),
        analytic_deriv=lambda h, n=n: Double(float(n), 0.0) * pow_int(h, n - 1),
        domain=dom,
        name=f"pow{n}",
    )


def elementary_catalog() -> dict[str, HFunction]:
    """The holomorphic menagerie: integer powers, exp, ln, Zhukowskij."""
    cat = {}
    for n in range(-2, 6):
        if n == 0:
            continue
        cat[f"pow{n}"] = _power_hfunction(n)
    cat["exp"] = HFunction(eval=exp, analytic_deriv=exp, domain=_always, name="exp")
    cat["ln"] = HFunction(
        eval=ln,
        analytic_deriv=lambda h: div(ONE, h),
        domain=quadrant_I_domain,
        name="ln",
    )
    cat["zhukowskij"] = HFunction(
        eval=zhukowskij,
        analytic_deriv=lambda h: Double(0.5, 0.0) * (ONE - pow_int(h, -2)),
        domain=offcone_domain(),
        name="zhukowskij",
    )
    return cat


CATALOG = elementary_catalog()

IDENTITY = HFunction(eval=lambda h: h, analytic_deriv=lambda h: ONE, name="identity")
CONJUGATION = HFunction(eval=conj, name="conj")
