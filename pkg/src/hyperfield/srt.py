"""2D Minkowski special relativity in the double-number representation.

Events are double numbers t + jx; frames are unit covectors of the dual
algebra.  Boosts are multiplications by unit-norm algebra elements, so
velocity composition is literally a product of frame covectors, and the
rapidity is additive.  The dynamics layer integrates the two relativistic
force laws with RK4 (constant-coefficient paths run through the compiled
kernels), and a small 1+1D Maxwell block closes the field side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .dnum import Double
from .errors import CFLViolation, NonCausalSegment, SuperluminalFrame

# --- products and conjugations ----------------------------------------------


def star(a, b) -> float:
    """Symmetric Minkowski product t1 t2 - x1 x2 (works on Double/CoVector)."""
    return _t(a) * _t(b) - _x(a) * _x(b)


def cross(a, b) -> float:
    """Skew (spinorial) product t1 x2 - t2 x1."""
    return _t(a) * _x(b) - _t(b) * _x(a)


def star_cross(a, b) -> tuple[float, float]:
    return star(a, b), cross(a, b)


def _t(v) -> float:
    return v.t if isinstance(v, Double) else v.T


def _x(v) -> float:
    return v.x if isinstance(v, Double) else v.X


@dataclass(frozen=True)
class CoVector:
    """Linear functional T*1star + X*jstar with omega(h) = T t + X x."""

    T: float
    X: float

    def __call__(self, h: Double) -> float:
        return self.T * h.t + self.X * h.x

    def __mul__(self, other: "CoVector") -> "CoVector":
        # the dual algebra multiplies exactly like the algebra itself
        return CoVector(
            self.T * other.T + self.X * other.X, self.T * other.X + self.X * other.T
        )

    def __neg__(self):
        return CoVector(-self.T, -self.X)


def vector_conjugate(h: Double) -> CoVector:
    """h*: index lowering by the Minkowski metric, (t, -x)."""
    return CoVector(h.t, -h.x)


def spinor_conjugate(h: Double) -> CoVector:
    """h^x: lowering by the skew metric, (-x, t)."""
    return CoVector(-h.x, h.t)


def sigma_t(h: Double) -> Double:
    """Time reflection -t + jx = -conj(h)."""
    return Double(-h.t, h.x)


def sigma_x(h: Double) -> Double:
    """Space reflection t - jx = conj(h)."""
    return Double(h.t, -h.x)


def sigma_I(h: Double) -> Double:
    """Total inversion x + jt = j*h."""
    return Double(h.x, h.t)


def frame_component(omega: CoVector) -> str:
    """Connected component of the unit circle |omega conj(omega)| = 1."""
    causal = abs(omega.T) > abs(omega.X)
    if causal:
        return "causal-up" if omega.T > 0 else "causal-down"
    return "acausal-up" if omega.X > 0 else "acausal-down"


def conjugation_table_check(pairs: Sequence[tuple[Double, Double]]) -> float:
    """Max deviation over the eight product identities of the two conjugations.

    The identities, with (*) the vector and (x) the spinor lowering:
    star:  *.* = star, x.* = cross, *.x = -cross, x.x = -star;
    cross: *.* = -cross, x.* = -star, *.x = star, x.x = cross.
    """
    worst = 0.0
    for h1, h2 in pairs:
        s = star(h1, h2)
        c = cross(h1, h2)
        v1, v2 = vector_conjugate(h1), vector_conjugate(h2)
        w1, w2 = spinor_conjugate(h1), spinor_conjugate(h2)
        checks = (
            star(v1, v2) - s,
            star(w1, v2) - c,
            star(v1, w2) + c,
            star(w1, w2) + s,
            cross(v1, v2) + c,
            cross(w1, v2) + s,
            cross(v1, w2) - s,
            cross(w1, w2) - c,
        )
        worst = max(worst, max(abs(v) for v in checks))
    return worst


def component_rule_check(h: Double) -> float:
    """Deviation of the lowering component rules Re/Im of h* and h^x."""
    v = vector_conjugate(h)
    w = spinor_conjugate(h)
    return max(
        abs(v.T - h.t), abs(v.X + h.x), abs(w.T + h.x), abs(w.X - h.t)
    )


def conjugation_tables_check(pairs: int = 200, seed: int = 710) -> dict[str, float]:
    """Self-contained report over random pairs: max deviations of the eight
    product identities and of the component lowering rules."""
    rng = np.random.default_rng(seed)
    samples = [
        (
            Double(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))),
            Double(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))),
        )
        for _ in range(pairs)
    ]
    identities = conjugation_table_check(samples)
    components = max(component_rule_check(h) for pair in samples for h in pair)
    return {"identities": identities, "component_rules": components}


# --- frames -------------------------------------------------------------------


def gamma_factor(v: float) -> float:
    if abs(v) >= 1.0:
        raise SuperluminalFrame(f"|v| must be < 1, got {v}")
    return 1.0 / math.sqrt(1.0 - v * v)


@dataclass(frozen=True)
class Frame:
    """Inertial frame of velocity v: time covector tau and space covector s."""

    v: float

    def __post_init__(self):
        gamma_factor(self.v)  # validates

    @property
    def gamma(self) -> float:
        return gamma_factor(self.v)

    @property
    def tau(self) -> CoVector:
        g = self.gamma
        return CoVector(g, -g * self.v)

    @property
    def s(self) -> CoVector:
        g = self.gamma
        return CoVector(-g * self.v, g)

    @property
    def rapidity(self) -> float:
        return math.atanh(self.v)

    def boost_element(self) -> Double:
        """Unit algebra element of the active boost, cosh psi + j sinh psi."""
        g = self.gamma
        return Double(g, g * self.v)


def project(frame: Frame, h: Double) -> tuple[float, float]:
    """Lorentz projections (tau(h), s(h)) of an event onto the frame."""
    return frame.tau(h), frame.s(h)


def reconstruct(frame: Frame, hT: float, hX: float) -> Double:
    """Invert project() via the identity decomposition tau* x tau - s* x s."""
    g = frame.gamma
    # tau* and s* are the metric-raised duals: (g, g v) and (g v, g)
    return Double(hT * g + hX * g * frame.v, hT * g * frame.v + hX * g)


def compose_velocity(v1: float, v2: float) -> float:
    """Velocity addition by multiplying the two tau covectors in the algebra."""
    tau = Frame(v1).tau * Frame(v2).tau
    return -tau.X / tau.T


# --- worldlines and dynamics --------------------------------------------------


@dataclass(frozen=True)
class ParticleState:
    position: Double
    velocity_2: Double  # 2-velocity V, V star V = 1
    mass: float

    @property
    def momentum(self) -> Double:
        return Double(self.mass * self.velocity_2.t, self.mass * self.velocity_2.x)

    @property
    def v(self) -> float:
        return self.velocity_2.x / self.velocity_2.t


def natural_parametrize(
    worldline: Sequence[tuple[float, Double]], mass: float
) -> list[tuple[float, ParticleState]]:
    """Reparametrize a sampled causal worldline by proper time.

    Velocities come from central differences (one-sided at the ends); each
    segment must be timelike and future-oriented.  Returns (s_k, state_k).
    """
    n = len(worldline)
    if n < 2:
        raise ValueError("need at least two samples")
    ws = [w for w, _ in worldline]
    hs = [h for _, h in worldline]
    hdots = []
    for k in range(n):
        if k == 0:
            dw = ws[1] - ws[0]
            dh = hs[1] - hs[0]
        elif k == n - 1:
            dw = ws[-1] - ws[-2]
            dh = hs[-1] - hs[-2]
        else:
            dw = ws[k + 1] - ws[k - 1]
            dh = hs[k + 1] - hs[k - 1]
        hdots.append(Double(dh.t / dw, dh.x / dw))
    out = []
    s = 0.0
    prev_speed = None
    for k, hdot in enumerate(hdots):
        ss = star(hdot, hdot)
        if ss <= 0.0 or hdot.t <= 0.0:
            raise NonCausalSegment(f"segment {k} is not future-timelike")
        speed = math.sqrt(ss)
        if k > 0:
            dw = ws[k] - ws[k - 1]
            s += 0.5 * (prev_speed + speed) * dw
        prev_speed = speed
        V = Double(hdot.t / speed, hdot.x / speed)
        out.append((s, ParticleState(hs[k], V, mass)))
    return out


def dynamics_step(state: ParticleState, f: float, ds: float) -> ParticleState:
    """One RK4 step of dP/ds = F with rest force jf boosted to the lab frame."""
    traj = kernels.force_run(
        (state.momentum.t, state.momentum.x), state.mass, f, ds, 1
    )
    return _state_from_momentum(state, Double(traj[1, 0], traj[1, 1]), ds)


def dynamics_run(state: ParticleState, f: float, ds: float, nsteps: int):
    """Constant-proper-force trajectory; returns array rows (s, P_t, P_x)."""
    traj = kernels.force_run(
        (state.momentum.t, state.momentum.x), state.mass, f, ds, nsteps
    )
    s = ds * np.arange(nsteps + 1)
    return np.column_stack((s, traj))


def _state_from_momentum(state: ParticleState, p: Double, ds: float) -> ParticleState:
    V = Double(p.t / state.mass, p.x / state.mass)
    mid = Double(
        state.position.t + ds * 0.5 * (state.velocity_2.t + V.t),
        state.position.x + ds * 0.5 * (state.velocity_2.x + V.x),
    )
    return ParticleState(mid, V, state.mass)


def lorentz_force_step(
    state: ParticleState, q: float, efield: Callable[[Double], float], ds: float
) -> ParticleState:
    """One RK4 step of dV/ds = (q/m) E(h) jV coupled with dh/ds = V."""
    qm = q / state.mass

    def rhs(h: Double, V: Double):
        e = efield(h)
        return V, Double(qm * e * V.x, qm * e * V.t)

    h, V = state.position, state.velocity_2
    k1h, k1v = rhs(h, V)
    k2h, k2v = rhs(_ax(h, k1h, 0.5 * ds), _ax(V, k1v, 0.5 * ds))
    k3h, k3v = rhs(_ax(h, k2h, 0.5 * ds), _ax(V, k2v, 0.5 * ds))
    k4h, k4v = rhs(_ax(h, k3h, ds), _ax(V, k3v, ds))
    h_new = Double(
        h.t + (ds / 6.0) * (k1h.t + 2 * k2h.t + 2 * k3h.t + k4h.t),
        h.x + (ds / 6.0) * (k1h.x + 2 * k2h.x + 2 * k3h.x + k4h.x),
    )
    v_new = Double(
        V.t + (ds / 6.0) * (k1v.t + 2 * k2v.t + 2 * k3v.t + k4v.t),
        V.x + (ds / 6.0) * (k1v.x + 2 * k2v.x + 2 * k3v.x + k4v.x),
    )
    return ParticleState(h_new, v_new, state.mass)


def lorentz_force_run(
    state: ParticleState, q: float, efield_const: float, ds: float, nsteps: int
):
    """Constant-field trajectory via the compiled kernel.

    Returns array rows (s, t, x, V_t, V_x).
    """
    out = kernels.lorentz_const_run(
        (state.position.t, state.position.x, state.velocity_2.t, state.velocity_2.x),
        q / state.mass,
        efield_const,
        ds,
        nsteps,
    )
    s = ds * np.arange(nsteps + 1)
    return np.column_stack((s, out))


def _ax(a: Double, d: Double, c: float) -> Double:
    return Double(a.t + c * d.t, a.x + c * d.x)


# --- 1+1D Maxwell block --------------------------------------------------------


def maxwell_1d_step(
    E: np.ndarray, rho: np.ndarray, v_field: np.ndarray, dt: float, dx: float
) -> np.ndarray:
    """Explicit update of dE/dt = -2 pi rho v on a periodic grid.

    The Gauss law dE/dx = 2 pi rho is the constraint part; check it with
    :func:`gauss_residual`.
    """
    if dt > dx:
        raise CFLViolation(f"dt = {dt} exceeds dx = {dx}")
    return E - dt * 2.0 * math.pi * rho * v_field


def gauss_solve(rho: np.ndarray, dx: float, e0: float = 0.0) -> np.ndarray:
    """Integrate the Gauss law: E(x) = e0 + 2 pi cumint rho dx (trapezoid)."""
    incr = np.zeros_like(rho)
    incr[1:] = 0.5 * (rho[1:] + rho[:-1]) * dx
    return e0 + 2.0 * math.pi * np.cumsum(incr)


def gauss_residual(E: np.ndarray, rho: np.ndarray, dx: float) -> np.ndarray:
    """dE/dx - 2 pi rho with central differences (periodic wrap)."""
    dE = (np.roll(E, -1) - np.roll(E, 1)) / (2.0 * dx)
    return dE - 2.0 * math.pi * rho


def continuity_residual(
    rho_prev: np.ndarray,
    rho_next: np.ndarray,
    rho_v: np.ndarray,
    dt: float,
    dx: float,
) -> np.ndarray:
    """d(rho)/dt + d(rho v)/dx by central differences (periodic wrap)."""
    drho_dt = (rho_next - rho_prev) / (2.0 * dt)
    dflux_dx = (np.roll(rho_v, -1) - np.roll(rho_v, 1)) / (2.0 * dx)
    return drho_dt + dflux_dx
