"""Named verification suites behind ``hyperfield verify``.

Each suite returns a list of (check name, measured residual, tolerance)
triples; a check passes when the residual is at most the tolerance.  All
sampling is seeded, so runs are reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from . import cplane, fields, poly, srt
from .contour import HyperbolicCircleContour, hyperbola_arc, circulation_flow, residue_integral
from .dnum import Double, Region, from_polar, PolarForm
from .holo import CATALOG, CONJUGATION, HFunction, cr_residual, wave_residual

Check = tuple[str, float, float]


def _sample(rng, f, count=40):
    pts = []
    while len(pts) < count:
        reg = (
            Region.QUADRANT_I
            if f.name == "ln"
            else (
                Region.QUADRANT_I,
                Region.QUADRANT_II,
                Region.QUADRANT_III,
                Region.QUADRANT_IV,
            )[rng.integers(0, 4)]
        )
        h = from_polar(
            PolarForm(reg, float(rng.uniform(0.4, 2.0)), float(rng.uniform(-1.5, 1.5)))
        )
        if f.domain(h):
            pts.append(h)
    return pts


def suite_cr(seed: int = 7) -> list[Check]:
    rng = np.random.default_rng(seed)
    step = 1e-4
    tol = 100 * step**2
    checks = []
    for name, f in CATALOG.items():
        worst = max(cr_residual(f, h, step) for h in _sample(rng, f))
        checks.append((f"cr[{name}]", worst, tol))
    control = min(
        cr_residual(CONJUGATION, h, step) for h in _sample(rng, CATALOG["pow1"], 10)
    )
    # reported value is tol/control: passing (<= 1) means the non-holomorphic
    # control exceeds the tolerance
    checks.append(("cr-control[conj] separation", tol / control, 1.0))
    return checks


def suite_wave(seed: int = 11) -> list[Check]:
    rng = np.random.default_rng(seed)
    step = 1e-4
    tol = 100 * step**2
    wave_step = math.sqrt(step)  # second-derivative stencil scaling
    checks = []
    for name, f in CATALOG.items():
        worst = max(wave_residual(f, h, step=wave_step) for h in _sample(rng, f))
        checks.append((f"wave[{name}]", worst, tol))
    tsq = HFunction(eval=lambda p: Double(p.t**2, 0.0), name="t2")
    control = min(
        wave_residual(tsq, h, step=wave_step) for h in _sample(rng, CATALOG["pow1"], 10)
    )
    checks.append(("wave-control[t^2] separation", tol / control, 1.0))
    return checks


def suite_poly(seed: int = 13) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    worst = 0.0
    for _ in range(1000):
        a = poly.Poly(tuple(rng.uniform(0.2, 3.0, 3) * rng.choice([-1.0, 1.0], 3)))
        b = poly.Poly(tuple(rng.uniform(0.2, 3.0, 3) * rng.choice([-1.0, 1.0], 3)))
        lhs = poly.pseudonorm(a * b)
        rhs = poly.pseudonorm(a) * poly.pseudonorm(b)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    checks.append(("norm-multiplicative[1000 pairs]", worst, 1e-12))

    worst = max(
        abs(sum(poly.exp_and_angles(poly.Poly(tuple(rng.uniform(0.05, 5.0, 3)))).chi))
        for _ in range(1000)
    )
    checks.append(("chi-sum-zero[1000]", worst, 1e-12))

    checks.append(
        ("triple-product-of-unity", abs(poly.nproduct(poly.I3, poly.I3, poly.I3) - 6.0), 0.0)
    )

    def holo_U(F):
        def U(x):
            a = x[1] - x[0] - x[2]
            b = x[2] - x[0] - x[1]
            c = x[0] - x[1] - x[2]
            return (F(a) + F(b), F(c) + F(b), F(c) + F(a))

        return U

    step = 1e-4
    for name, F in (("sin", math.sin), ("cubic", lambda u: u**3 - u)):
        worst = max(
            poly.cr3_residual(holo_U(F), tuple(rng.uniform(-1, 1, 3)), step)
            for _ in range(10)
        )
        checks.append((f"cr3[{name}]", worst, 500 * step**2))

    got = poly.delta3_residual(lambda x: x[0] * x[1] * x[2], (0.2, -0.4, 0.7))
    checks.append(("delta3[x1 x2 x3] = -1/4", abs(got + 0.25), 1e-9))

    def U1(x):
        p = poly.j_to_isotropic(x)
        return poly.isotropic_to_j(p * p * p)[0]

    worst = max(
        abs(poly.delta3_residual(U1, tuple(rng.uniform(-0.8, 0.8, 3))))
        for _ in range(5)
    )
    checks.append(("delta3[holomorphic cube]", worst, 1e-8))
    return checks


def suite_srt(seed: int = 17) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    checks.append(
        ("compose(0.5, 0.5) = 0.8", abs(srt.compose_velocity(0.5, 0.5) - 0.8), 1e-12)
    )
    worst = 0.0
    for _ in range(100):
        v = float(rng.uniform(-0.95, 0.95))
        h = Double(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
        hT, hX = srt.project(srt.Frame(v), h)
        worst = max(worst, abs(hT**2 - hX**2 - (h.t**2 - h.x**2)))
    checks.append(("interval-invariance[100]", worst, 1e-12))

    traj = srt.dynamics_run(srt.ParticleState(Double(0, 0), Double(1, 0), 1.0), 1.0, 1e-3, 1000)
    v = traj[-1, 2] / traj[-1, 1]
    checks.append(("constant-force v = tanh(fs/m)", abs(v - math.tanh(1.0)), 1e-8))

    lr = srt.lorentz_force_run(
        srt.ParticleState(Double(0, 0), Double(1, 0), 1.0), 1.0, 0.3, 1e-3, 10_000
    )
    vsq = lr[:, 3] ** 2 - lr[:, 4] ** 2
    checks.append(("lorentz V*V drift over 1e4 steps", float(np.max(np.abs(vsq - 1))), 1e-10))

    pairs = [
        (
            Double(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))),
            Double(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3))),
        )
        for _ in range(200)
    ]
    checks.append(("conjugation-table[200 pairs]", srt.conjugation_table_check(pairs), 1e-12))

    n = 1000
    dx = 1.0 / n
    E = srt.gauss_solve(np.full(n, 0.7), dx)
    slope = np.polyfit(dx * np.arange(n), E, 1)[0]
    checks.append(("maxwell static slope = 2 pi rho0", abs(slope - 2 * math.pi * 0.7), 1e-6))

    x = dx * np.arange(n)
    dt = dx

    def blob(shift):
        d = (x - 0.5 - shift + 0.5) % 1.0 - 0.5
        return np.exp(-(d**2) / (2 * 0.05**2))

    res = srt.continuity_residual(blob(-dt), blob(dt), blob(0.0), dt, dx)
    checks.append(("continuity residual", float(np.max(np.abs(res))), 1e-8))
    return checks


def suite_dual(seed: int = 19) -> list[Check]:
    rng = np.random.default_rng(seed)
    checks = []
    # elliptic Gauss: unit charge over the unit circle
    gamma, pi_flux = cplane.circulation_flux(cplane.CSource(1.0), 1.0, 4096)
    checks.append(("complex source Gamma = 0", abs(gamma), 1e-8))
    checks.append(("complex source Pi = 2 pi q", abs(pi_flux - 2 * math.pi), 1e-8))
    gamma, pi_flux = cplane.circulation_flux(cplane.CVortex(1.0), 1.0, 4096)
    checks.append(("complex vortex Gamma = 2 pi q", abs(gamma - 2 * math.pi), 1e-8))
    checks.append(("complex vortex Pi = 0", abs(pi_flux), 1e-8))

    arc = hyperbola_arc(Double(0, 0), 1.0, Region.QUADRANT_I, -3.0, 3.0, 4097)
    got = circulation_flow(lambda h: fields.strength(fields.Source(1.0), h), arc)
    checks.append(("hyperbolic source Upsilon = 0", abs(got.circulation), 1e-6))
    checks.append(("hyperbolic source Xi = 2 Psi q", abs(got.flow - 6.0), 1e-6))
    got = circulation_flow(lambda h: fields.strength(fields.Vortex(1.0), h), arc)
    checks.append(("hyperbolic vortex Upsilon = 2 Psi q", abs(got.circulation - 6.0), 1e-6))
    checks.append(("hyperbolic vortex Xi = 0", abs(got.flow), 1e-6))

    res = residue_integral(
        Double(0, 0),
        -1,
        HyperbolicCircleContour(1.0, 3.0, quadrants=(Region.QUADRANT_I,)),
    )
    checks.append(("residue j l_H(Psi) on one arc", abs(res.value - Double(0, 6)), 1e-8))

    worst_c = 0.0
    worst_h = 0.0
    for _ in range(50):
        z = complex(float(rng.uniform(0.4, 2.0)), float(rng.uniform(0.4, 2.0)))
        e = cplane.cstrength(cplane.CSource(1.0), z)
        b = cplane.cdual(cplane.CSource(1.0), z)
        worst_c = max(worst_c, abs((b * e.conjugate()).real))
        h = from_polar(
            PolarForm(Region.QUADRANT_I, float(rng.uniform(0.4, 2.0)), float(rng.uniform(-1.5, 1.5)))
        )
        eh = fields.strength(fields.Source(1.0), h)
        bh = fields.dual(fields.Source(1.0), h)
        worst_h = max(worst_h, abs((bh * Double(eh.t, -eh.x)).t))
    checks.append(("elliptic dual orthogonality[50]", worst_c, 1e-10))
    checks.append(("hyperbolic dual orthogonality[50]", worst_h, 1e-10))
    return checks


SUITES = {
    "cr": suite_cr,
    "wave": suite_wave,
    "poly": suite_poly,
    "srt": suite_srt,
    "dual": suite_dual,
}


def run_suite(name: str) -> tuple[list[Check], bool]:
    checks = SUITES[name]()
    all_pass = all(residual <= tol for _, residual, tol in checks)
    return checks, all_pass
