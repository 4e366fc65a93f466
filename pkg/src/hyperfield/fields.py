"""Catalog of hyperbolic field configurations and field-line tracing.

Conventions, fixed once for the whole artifact:

* strength of a potential F is  E = -conj(dF/dh);
* the point source of charge q has potential -q ln h and strength
  q h / norm_sq(h), defined in every quadrant;
* the point vortex of charge m is the dual construction: its potential is
  j * (-m ln h), so its strength is -j E_source(m).  This is the field whose
  arc circulation is +m * 2*Psi (and zero flow);
* the dual-field operation B = j E rotates any strength by j.  Note the
  vortex *kind* and the dual of a source therefore differ by an overall
  sign; both trace the same hyperbola family xi1 xi2 = const;
* the vortex-source carries complex charge q - jm (potential -(q - jm) ln h),
  circulation -m * 2*Psi and flow q * 2*Psi per quadrant-I arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .dnum import (
    Double,
    J,
    Region,
    conj,
    div,
    from_isotropic,
    ln,
    norm_sq,
    polar_decompose,
    region,
    sign_factor,
    to_isotropic,
)
from .errors import DomainError, SeedOnCone, SeedSingular, ZeroDivisor
from .holo import HFunction, derivative

# --- configuration kinds ---------------------------------------------------


@dataclass(frozen=True)
class Source:
    q: float = 1.0


@dataclass(frozen=True)
class Vortex:
    m: float = 1.0


@dataclass(frozen=True)
class VortexSource:
    q: float = 1.0
    m: float = 1.0

    @property
    def charge(self) -> Double:
        return Double(self.q, -self.m)


@dataclass(frozen=True)
class Multipole:
    n: int = 1
    q_e: float = 1.0
    q_m: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("multipole order must be >= 1")

    @property
    def charge(self) -> Double:
        return Double(self.q_e, -self.q_m)

    @property
    def delta(self) -> float:
        """Orientation angle artanh(q_m / q_e); hyperbolic, so |q_m| < |q_e|."""
        ratio = self.q_m / self.q_e
        if abs(ratio) >= 1.0:
            raise DomainError("multipole needs |q_m| < |q_e| for a real angle")
        return math.atanh(ratio)

    @property
    def power(self) -> float:
        return math.sqrt(abs(self.q_e**2 - self.q_m**2))


@dataclass(frozen=True)
class CylinderUniform:
    e0: float = 1.0
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise DomainError("cylinder radius must be positive")


@dataclass(frozen=True)
class Custom:
    """Arbitrary h-potential wrapped as a configuration."""

    potential: HFunction


@dataclass(frozen=True)
class Superposition:
    parts: tuple


PotentialSpec = Source | Vortex | VortexSource | Multipole | CylinderUniform | Custom | Superposition


def superpose(*specs) -> Superposition:
    return Superposition(tuple(specs))


# --- potential / strength / dual -------------------------------------------


def potential(spec: PotentialSpec, h: Double) -> Double:
    """Complex h-potential; ln-based kinds live in open quadrant I.

    Catalog kinds are evaluated componentwise in the isotropic basis, which
    stays fully accurate near the cone (the Cartesian closed forms lose
    relative precision there through norm_sq cancellation).
    """
    if isinstance(spec, (Source, Vortex, VortexSource)):
        charge = _ln_charge(spec)
        lnh = ln(h)
        return -(charge * lnh)
    if isinstance(spec, Multipole):
        sign = -1.0 if spec.n % 2 == 0 else 1.0
        q1, q2 = to_isotropic(spec.charge)
        xi1, xi2 = to_isotropic(h)
        if xi1 == 0.0 or xi2 == 0.0:
            raise ZeroDivisor("multipole potential singular on the cone")
        return from_isotropic(sign * q1 / xi1**spec.n, sign * q2 / xi2**spec.n)
    if isinstance(spec, CylinderUniform):
        xi1, xi2 = to_isotropic(h)
        if xi1 == 0.0 or xi2 == 0.0:
            raise ZeroDivisor("cylinder potential singular on the cone")
        r2 = spec.radius * spec.radius
        return from_isotropic(
            -spec.e0 * (xi1 + r2 / xi1), -spec.e0 * (xi2 + r2 / xi2)
        )
    if isinstance(spec, Custom):
        return spec.potential.eval(h)
    if isinstance(spec, Superposition):
        total = Double(0.0, 0.0)
        for part in spec.parts:
            total = total + potential(part, h)
        return total
    raise TypeError(f"unknown spec {spec!r}")


def _ln_charge(spec) -> Double:
    """Complex charge of the logarithmic kinds: potential = -charge * ln h."""
    if isinstance(spec, Source):
        return Double(spec.q, 0.0)
    if isinstance(spec, Vortex):
        return Double(0.0, spec.m)
    return spec.charge


def potential_with_region(spec: PotentialSpec, h: Double) -> tuple[Region, Double]:
    """Potential of the quadrant-I representative h/eps plus the quadrant tag.

    The dropped additive constant ("ln eps") is not an algebra element; it
    disappears under differentiation, so the strength is unaffected.
    """
    reg = region(h)
    rep = div(h, sign_factor(reg))
    return reg, potential(spec, rep)


def strength(spec: PotentialSpec, h: Double) -> Double:
    """Field strength E = -conj(dF/dh), defined off-cone in all quadrants.

    Isotropic componentwise evaluation, mirroring the tracing kernels.
    """
    if isinstance(spec, (Source, Vortex, VortexSource)):
        a1, a2 = to_isotropic(_ln_family_constant(spec))
        xi1, xi2 = to_isotropic(h)
        if xi1 == 0.0 or xi2 == 0.0:
            raise ZeroDivisor("strength undefined on the cone")
        return from_isotropic(a1 / xi2, a2 / xi1)
    if isinstance(spec, Multipole):
        sign = -1.0 if spec.n % 2 == 0 else 1.0  # (-1)^(n+1)
        qb1, qb2 = to_isotropic(conj(spec.charge))
        xi1, xi2 = to_isotropic(h)
        if xi1 == 0.0 or xi2 == 0.0:
            raise ZeroDivisor("strength undefined on the cone")
        c = sign * spec.n
        m = spec.n + 1
        return from_isotropic(c * qb1 / xi2**m, c * qb2 / xi1**m)
    if isinstance(spec, CylinderUniform):
        xi1, xi2 = to_isotropic(h)
        if xi1 == 0.0 or xi2 == 0.0:
            raise ZeroDivisor("strength undefined on the cone")
        r2 = spec.radius * spec.radius
        return from_isotropic(
            spec.e0 * (1.0 - r2 / (xi2 * xi2)), spec.e0 * (1.0 - r2 / (xi1 * xi1))
        )
    if isinstance(spec, Custom):
        return -conj(derivative(spec.potential, h))
    if isinstance(spec, Superposition):
        total = Double(0.0, 0.0)
        for part in spec.parts:
            total = total + strength(part, h)
        return total
    raise TypeError(f"unknown spec {spec!r}")


def dual(spec: PotentialSpec, h: Double) -> Double:
    """Rotated field B = j E."""
    return J * strength(spec, h)


# --- first integrals of the line families ----------------------------------


def line_invariant(spec: PotentialSpec, h: Double) -> float:
    """Closed-form first integral in quadrant I (spec-kind specific)."""
    p = polar_decompose(h)
    if p.region is not Region.QUADRANT_I:
        raise DomainError("line invariant defined in open quadrant I")
    if isinstance(spec, Source):
        return p.psi
    if isinstance(spec, Vortex):
        return math.log(p.rho)
    if isinstance(spec, VortexSource):
        alpha = spec.q / spec.m
        xi1, xi2 = to_isotropic(h)
        return xi1 ** (1.0 - alpha) * xi2 ** (1.0 + alpha)
    if isinstance(spec, Multipole):
        s = math.sinh(spec.n * p.psi - spec.delta)
        if s == 0.0:
            raise DomainError("invariant singular where sinh(n psi - delta) = 0")
        return p.rho**spec.n / s
    raise DomainError(f"no closed-form line invariant for {spec!r}")


def _drift_functional(spec: PotentialSpec, use_dual: bool) -> Callable[[float, float], float]:
    """First integral monitored along traced lines, in isotropic coordinates.

    For any strength A / conj(h) the family is xi1^(a2) * xi2^(-a1) = const;
    the returned functional is that expression with normalized exponents.
    """
    if isinstance(spec, (Source, Vortex, VortexSource)):
        a = _ln_family_constant(spec)
        if use_dual:
            a = J * a
        a1, a2 = to_isotropic(a)
        scale = max(abs(a1), abs(a2))
        e1, e2 = a2 / scale, -a1 / scale

        def functional(xi1, xi2, e1=e1, e2=e2):
            return abs(xi1) ** e1 * abs(xi2) ** e2

        return functional
    # fall back to the force function: field lines are Im(potential) = const.
    # The multipole closed form rho^n / sinh(n psi - delta) is quadrant-I
    # only and blows up where the sinh vanishes; the force function carries
    # the same level sets and is defined off-cone everywhere, so the tracer
    # monitors it instead (the remaining kinds likewise).
    def functional(xi1, xi2, spec=spec, use_dual=use_dual):
        h = from_isotropic(xi1, xi2)
        pot = potential(spec, h)
        if use_dual:
            pot = J * pot
        return pot.x

    return functional


def _ln_family_constant(spec) -> Double:
    """A in E = A / conj(h)."""
    if isinstance(spec, Source):
        return Double(spec.q, 0.0)
    if isinstance(spec, Vortex):
        return Double(0.0, -spec.m)
    if isinstance(spec, VortexSource):
        return conj(spec.charge)
    raise TypeError(spec)


# --- tracing ----------------------------------------------------------------


@dataclass(frozen=True)
class FieldLine:
    seed: Double
    s: np.ndarray          # arc-length parameter per node
    points: np.ndarray     # (n, 2) Cartesian (t, x)
    invariant: np.ndarray  # monitored first integral per node
    invariant_drift: float
    status: str

    def __len__(self):
        return len(self.s)


_STATUS_NAMES = {
    kernels.STATUS_MAXLEN: "max-length",
    kernels.STATUS_CONE: "cone",
    kernels.STATUS_BOX: "box",
    kernels.STATUS_NUMERIC: "numeric",
}


def _kernel_params(spec: PotentialSpec):
    if isinstance(spec, (Source, Vortex, VortexSource)):
        a1, a2 = to_isotropic(_ln_family_constant(spec))
        return kernels.KIND_LN_FAMILY, (a1, a2, 0.0)
    if isinstance(spec, Multipole):
        sign = -1.0 if spec.n % 2 == 0 else 1.0  # (-1)^(n+1)
        qb1, qb2 = to_isotropic(conj(spec.charge))
        c = sign * spec.n
        return kernels.KIND_MULTIPOLE, (c * qb1, c * qb2, float(spec.n))
    if isinstance(spec, CylinderUniform):
        return kernels.KIND_CYLINDER, (spec.e0, spec.radius, 0.0)
    return None, None


def trace_field_line(
    spec: PotentialSpec,
    seed: Double,
    ds: float = 1e-3,
    max_len: float = 10.0,
    use_dual: bool = False,
    cone_tol: float = 1e-9,
    box: float = 1e6,
) -> FieldLine:
    """Fourth-order fixed-step integration of dh/ds = E/|E| (or B/|B|).

    Terminates at max_len, on cone proximity, or on leaving the bounding box;
    records the monitored first integral and its maximal relative drift.
    """
    lines = trace_field_lines(spec, [seed], ds, max_len, use_dual, cone_tol, box)
    return lines[0]


def trace_field_lines(
    spec: PotentialSpec,
    seeds: Sequence[Double],
    ds: float = 1e-3,
    max_len: float = 10.0,
    use_dual: bool = False,
    cone_tol: float = 1e-9,
    box: float = 1e6,
) -> list[FieldLine]:
    if ds <= 0:
        raise DomainError("ds must be positive")
    nsteps = max(1, int(round(max_len / ds)))
    for seed in seeds:
        xi1, xi2 = to_isotropic(seed)
        if min(abs(xi1), abs(xi2)) <= cone_tol * max(1.0, abs(xi1), abs(xi2)):
            raise SeedOnCone(f"seed {seed} is on or too near the cone")
        try:
            e = dual(spec, seed) if use_dual else strength(spec, seed)
        except (ArithmeticError, ValueError) as exc:
            raise SeedSingular(f"field undefined at seed {seed}: {exc}") from exc
        if not (math.isfinite(e.t) and math.isfinite(e.x)) or abs(e) == 0.0:
            raise SeedSingular(f"field singular or zero at seed {seed}")

    kind, params = _kernel_params(spec)
    if kind is not None:
        xi0 = np.array([to_isotropic(s) for s in seeds], dtype=np.float64)
        pts, lens, stats = kernels.trace_many(
            xi0, kind, params, use_dual, ds, nsteps, cone_tol, box
        )
        return [
            _build_line(spec, seeds[i], pts[i, : lens[i]], ds, int(stats[i]), use_dual)
            for i in range(len(seeds))
        ]
    return [
        _trace_generic(spec, seed, ds, nsteps, use_dual, cone_tol, box)
        for seed in seeds
    ]


def _build_line(spec, seed, xi_points, ds, status_code, use_dual) -> FieldLine:
    functional = _drift_functional(spec, use_dual)
    n = xi_points.shape[0]
    inv = np.empty(n)
    for k in range(n):
        inv[k] = functional(xi_points[k, 0], xi_points[k, 1])
    cart = np.column_stack(
        ((xi_points[:, 0] + xi_points[:, 1]) / 2.0, (xi_points[:, 0] - xi_points[:, 1]) / 2.0)
    )
    ref = abs(inv[0]) if inv[0] != 0.0 else 1.0
    drift = float(np.max(np.abs(inv - inv[0])) / ref)
    return FieldLine(
        seed=seed,
        s=ds * np.arange(n),
        points=cart,
        invariant=inv,
        invariant_drift=drift,
        status=_STATUS_NAMES[status_code],
    )


def _trace_generic(spec, seed, ds, nsteps, use_dual, cone_tol, box) -> FieldLine:
    """Python RK4 path for Custom and Superposition configurations."""

    def field(h: Double) -> Double:
        e = dual(spec, h) if use_dual else strength(spec, h)
        nrm = abs(e)
        return Double(e.t / nrm, e.x / nrm)

    pts = [(seed.t, seed.x)]
    h = seed
    status_code = kernels.STATUS_MAXLEN
    for _ in range(nsteps):
        xi1, xi2 = to_isotropic(h)
        if min(abs(xi1), abs(xi2)) <= cone_tol * max(1.0, abs(xi1), abs(xi2)):
            status_code = kernels.STATUS_CONE
            break
        if abs(h.t) > box or abs(h.x) > box:
            status_code = kernels.STATUS_BOX
            break
        try:
            k1 = field(h)
            k2 = field(h + Double(0.5 * ds, 0) * k1)
            k3 = field(h + Double(0.5 * ds, 0) * k2)
            k4 = field(h + Double(ds, 0) * k3)
        except (ArithmeticError, ValueError):
            status_code = kernels.STATUS_NUMERIC
            break
        new = h + Double(ds / 6.0, 0.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        n1, n2 = to_isotropic(new)
        if n1 * xi1 <= 0.0 or n2 * xi2 <= 0.0:
            status_code = kernels.STATUS_CONE
            break
        h = new
        pts.append((h.t, h.x))
    cart = np.asarray(pts)
    xi = np.column_stack((cart[:, 0] + cart[:, 1], cart[:, 0] - cart[:, 1]))
    return _build_line_from_xi(spec, seed, xi, cart, ds, status_code, use_dual)


def _build_line_from_xi(spec, seed, xi, cart, ds, status_code, use_dual) -> FieldLine:
    functional = _drift_functional(spec, use_dual)
    inv = np.array([functional(a, b) for a, b in xi])
    ref = abs(inv[0]) if inv[0] != 0.0 else 1.0
    drift = float(np.max(np.abs(inv - inv[0])) / ref)
    return FieldLine(
        seed=seed,
        s=ds * np.arange(len(cart)),
        points=cart,
        invariant=inv,
        invariant_drift=drift,
        status=_STATUS_NAMES[status_code],
    )


# --- boundary-form wave solution --------------------------------------------


def wave_boundary_solution(R: float, phi0: float, h: Double) -> float:
    """phi0 + ln((t^2 - x^2)/R^2): the wave field constant on rho = R.

    Defined in the timelike region t^2 > x^2; solves the wave equation off
    the cone and equals phi0 exactly on the hyperbolic circle of radius R.
    """
    if R <= 0:
        raise DomainError("R must be positive")
    interval = norm_sq(h)
    if interval <= 0:
        raise DomainError("wave solution defined in the timelike region only")
    return phi0 + math.log(interval / (R * R))


def multipole_from_derivative(spec: Multipole, h: Double, step: float = 1e-5) -> Double:
    """Order-n potential from the derivative of the order-(n-1) closed form.

    Differentiating Q/h^(n-1) brings down a factor (n-1), which the charge
    ratio has to absorb: with equal powers the recursion reads
    F_n = dF_(n-1)/dh / (n-1).  One Richardson-extrapolated numeric
    derivative of the closed-form F_(n-1); for holomorphic F the h-derivative
    equals the t-partial.
    """
    if spec.n < 2:
        raise DomainError("recursion starts at n = 2")
    lower = Multipole(spec.n - 1, spec.q_e, spec.q_m)

    def d_dh(step_):
        plus = potential(lower, Double(h.t + step_, h.x))
        minus = potential(lower, Double(h.t - step_, h.x))
        return Double((plus.t - minus.t) / (2 * step_), (plus.x - minus.x) / (2 * step_))

    coarse = d_dh(step)
    fine = d_dh(step / 2)
    extrap = Double(
        fine.t + (fine.t - coarse.t) / 3.0, fine.x + (fine.x - coarse.x) / 3.0
    )
    ratio = 1.0 / (spec.n - 1)
    return Double(ratio, 0.0) * extrap
