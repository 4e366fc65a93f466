"""Path integration on the double plane and the regularized residue machinery.

The total hyperbolic angle measure diverges, so closed "hyperbolic circles"
are regularized by a rapidity cutoff Psi: each quadrant arc carries the
finite angle measure 2*Psi, and the divergent constant l_H is replaced by
the per-arc surrogate l_H(Psi) = 2*Psi.  The inter-arc regions, where the
contour would cross the null cone of the centre, are pinched out; their
possible contribution is folded into the reported error bound, never into
the value.

Two canonical contour families are exposed, because the two classical
integral statements need different traversals:

* sector arcs, every arc swept with increasing rapidity: this is the family
  on which the residue dichotomy produces j * 2*Psi per arc at alpha = -1;
* the geometrically closed pinched circle, arcs alternating orientation so
  the loop is consistently traversed: on it every integer power integrates
  to ~0 (the hyperbolic Cauchy picture).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .dnum import Double, Region, conj, sign_factor, to_isotropic
from .errors import DomainError, SingularSample

QUADRANT_ORDER = (
    Region.QUADRANT_I,
    Region.QUADRANT_II,
    Region.QUADRANT_III,
    Region.QUADRANT_IV,
)


@dataclass(frozen=True)
class PinchGap:
    """Parameter interval excluded around one cone crossing."""

    w_lo: float
    w_hi: float
    point_lo: Double
    point_hi: Double

    def chord_length(self) -> float:
        return abs(self.point_hi - self.point_lo)


@dataclass(frozen=True)
class Path:
    """Piecewise-smooth sampled curve.

    ``samples`` is an ordered list of (parameter, point); consecutive samples
    whose parameters straddle a pinch gap are not joined by an integration
    segment.  ``closed`` is metadata: builders append the closing sample
    explicitly, there is no implicit wrap-around.
    """

    samples: tuple[tuple[float, Double], ...]
    closed: bool = False
    pinch_gaps: tuple[PinchGap, ...] = field(default_factory=tuple)

    @classmethod
    def from_function(
        cls,
        gamma: Callable[[float], Double],
        w0: float,
        w1: float,
        n: int = 513,
        closed: bool = False,
    ) -> "Path":
        if n < 3 or n % 2 == 0:
            raise ValueError("sample count must be odd and >= 3")
        ws = np.linspace(w0, w1, n)
        return cls(tuple((float(w), gamma(float(w))) for w in ws), closed=closed)

    @classmethod
    def line(cls, a: Double, b: Double, n: int = 513) -> "Path":
        return cls.from_function(
            lambda s: Double(a.t + s * (b.t - a.t), a.x + s * (b.x - a.x)), 0.0, 1.0, n
        )

    def max_step(self) -> float:
        runs = self._runs()
        gaps = [
            max(abs(q.t - p.t), abs(q.x - p.x))
            for run in runs
            for (_, p), (_, q) in zip(run, run[1:])
        ]
        return max(gaps) if gaps else 0.0

    def _in_gap(self, w_a: float, w_b: float) -> bool:
        mid = 0.5 * (w_a + w_b)
        return any(g.w_lo < mid < g.w_hi for g in self.pinch_gaps)

    def _runs(self) -> list[list[tuple[float, Double]]]:
        """Contiguous sample runs separated by pinch gaps."""
        runs: list[list[tuple[float, Double]]] = [[]]
        for k, sample in enumerate(self.samples):
            if runs[-1] and self._in_gap(runs[-1][-1][0], sample[0]):
                runs.append([sample])
            else:
                runs[-1].append(sample)
        return [r for r in runs if len(r) >= 2]


class IntegralResult(NamedTuple):
    value: Double
    error: float
    pinch_bound: float = 0.0

    @property
    def total_error(self) -> float:
        return self.error + self.pinch_bound


def _check_finite(value: Double, w: float):
    if not (math.isfinite(value.t) and math.isfinite(value.x)):
        raise SingularSample(f"integrand non-finite at parameter {w}")


def _trap(values: Sequence[Double], points: Sequence[Double], conjugate: bool) -> Double:
    acc_t = 0.0
    acc_x = 0.0
    for k in range(len(points) - 1):
        dh = points[k + 1] - points[k]
        if conjugate:
            dh = conj(dh)
        avg = Double(
            0.5 * (values[k].t + values[k + 1].t), 0.5 * (values[k].x + values[k + 1].x)
        )
        seg = avg * dh
        acc_t += seg.t
        acc_x += seg.x
    return Double(acc_t, acc_x)


def _integrate_run(
    f: Callable[[Double], Double], run: list[tuple[float, Double]], conjugate: bool
) -> tuple[Double, float]:
    points = [p for _, p in run]
    values = []
    for w, p in run:
        try:
            v = f(p)
        except (ArithmeticError, ValueError) as exc:
            raise SingularSample(
                f"integrand undefined at parameter {w}: {exc}"
            ) from exc
        _check_finite(v, w)
        values.append(v)
    fine = _trap(values, points, conjugate)
    if len(points) >= 5 and len(points) % 2 == 1:
        coarse = _trap(values[::2], points[::2], conjugate)
        # Richardson step: eliminate the O(h^2) trapezoid term
        corr = Double((fine.t - coarse.t) / 3.0, (fine.x - coarse.x) / 3.0)
        return fine + corr, abs(corr)
    return fine, abs(fine) * 1e-8


def _pinch_bound(f: Callable[[Double], Double], path: Path) -> float:
    bound = 0.0
    for gap in path.pinch_gaps:
        mags = []
        for p in (gap.point_lo, gap.point_hi):
            try:
                mags.append(abs(f(p)))
            except Exception:
                continue
        if mags:
            bound += max(mags) * gap.chord_length()
    return bound


def integrate(f: Callable[[Double], Double], path: Path) -> IntegralResult:
    """Composite trapezoid/Richardson estimate of the line integral of f dh."""
    total = Double(0.0, 0.0)
    err = 0.0
    for run in path._runs():
        value, run_err = _integrate_run(f, run, conjugate=False)
        total = total + value
        err += run_err
    return IntegralResult(total, err, _pinch_bound(f, path))


class CirculationFlow(NamedTuple):
    circulation: float
    flow: float
    error: float


def circulation_flow(field: Callable[[Double], Double], path: Path) -> CirculationFlow:
    """Circulation and current of a field along a path.

    Integrates Omega = int E dconj(h) and splits it as circulation - j*flow;
    when E derives from a potential U + jV these equal the endpoint drops
    -delta U and -delta V.
    """
    total = Double(0.0, 0.0)
    err = 0.0
    for run in path._runs():
        value, run_err = _integrate_run(field, run, conjugate=True)
        total = total + value
        err += run_err
    err += _pinch_bound(field, path)
    return CirculationFlow(total.t, -total.x, err)


def hyperbola_arc(
    center: Double,
    rho: float,
    quadrant: Region,
    psi_lo: float,
    psi_hi: float,
    n: int = 513,
) -> Path:
    """Constant-rho arc ``center + eps * rho * exp(j psi)`` in one quadrant."""
    eps = sign_factor(quadrant)

    def gamma(psi: float) -> Double:
        return center + eps * Double(rho * math.cosh(psi), rho * math.sinh(psi))

    return Path.from_function(gamma, psi_lo, psi_hi, n)


@dataclass(frozen=True)
class HyperbolicCircleContour:
    """Pinched hyperbolic circle |norm_sq(h - center)| = rho^2, cutoff Psi.

    Each selected quadrant contributes the arc psi in [-Psi, Psi]; the
    regularized angle measure per arc is 2*Psi.
    """

    rho: float
    psi_cutoff: float
    center: Double = Double(0.0, 0.0)
    quadrants: tuple[Region, ...] = QUADRANT_ORDER
    pinch_epsilon: float | None = None
    samples_per_arc: int = 4097

    def __post_init__(self):
        if self.rho <= 0:
            raise DomainError("rho must be positive")
        if self.psi_cutoff <= 0:
            raise DomainError("psi cutoff must be positive")
        bad = [q for q in self.quadrants if q not in QUADRANT_ORDER]
        if bad:
            raise DomainError(f"not open quadrants: {bad}")

    @property
    def pinch(self) -> float:
        return 1e-6 * self.rho if self.pinch_epsilon is None else self.pinch_epsilon

    def arc_point(self, quadrant: Region, psi: float) -> Double:
        return self.center + sign_factor(quadrant) * Double(
            self.rho * math.cosh(psi), self.rho * math.sinh(psi)
        )

    def sector_paths(self) -> list[Path]:
        """One path per quadrant, each swept with increasing rapidity."""
        return [
            hyperbola_arc(
                self.center,
                self.rho,
                q,
                -self.psi_cutoff,
                self.psi_cutoff,
                self.samples_per_arc,
            )
            for q in self.quadrants
        ]

    def closed_path(self) -> Path:
        """Geometrically closed loop: arcs alternate orientation, the four
        inter-arc cone crossings are pinched out.

        All arcs share one rapidity grid so that integrands proportional to
        eps^(alpha+1) cancel exactly in the alternating sum.
        """
        if tuple(self.quadrants) != QUADRANT_ORDER:
            raise DomainError("closed circle requires all four quadrants")
        n = self.samples_per_arc
        psi_grid = np.linspace(-self.psi_cutoff, self.psi_cutoff, n)
        samples: list[tuple[float, Double]] = []
        gaps: list[PinchGap] = []
        w = 0.0
        span = 2.0 * self.psi_cutoff
        orientations = (1, -1, 1, -1)
        last_point = None
        for idx, (q, orient) in enumerate(zip(QUADRANT_ORDER, orientations)):
            grid = psi_grid if orient == 1 else psi_grid[::-1]
            start_w = w + (self.pinch if idx > 0 else 0.0)
            first_point = self.arc_point(q, float(grid[0]))
            if idx > 0:
                gaps.append(PinchGap(w, start_w, last_point, first_point))
            for k, psi in enumerate(grid):
                samples.append((start_w + span * k / (n - 1), self.arc_point(q, float(psi))))
            w = start_w + span
            last_point = self.arc_point(q, float(grid[-1]))
        # closing gap back to the first sample
        first = samples[0][1]
        gaps.append(PinchGap(w, w + self.pinch, last_point, first))
        samples.append((w + self.pinch, first))
        return Path(tuple(samples), closed=True, pinch_gaps=tuple(gaps))


def angle_measure(contour: HyperbolicCircleContour) -> float:
    """Regularized l_H surrogate: 2*Psi per selected arc."""
    return 2.0 * contour.psi_cutoff * len(contour.quadrants)


def _power(h: Double, alpha: int) -> Double:
    """(h)^alpha componentwise in the isotropic basis, integer alpha."""
    xi1, xi2 = to_isotropic(h)
    if alpha < 0 and (xi1 == 0.0 or xi2 == 0.0):
        raise SingularSample("negative power on the cone")
    p1 = xi1**alpha
    p2 = xi2**alpha
    return Double((p1 + p2) / 2.0, (p1 - p2) / 2.0)


def residue_integral(
    h0: Double, alpha: int, contour: HyperbolicCircleContour
) -> IntegralResult:
    """The residue dichotomy integral of (h - h0)^alpha dh.

    alpha = -1 uses the exact arc parametrization dh/(h - h0) = j dpsi on the
    increasing-rapidity sector arcs, giving j * 2*Psi per arc.  Other integer
    powers are integrated over the pinched closed circle when all four
    quadrants are selected (value ~ 0), else over the open sector arcs.
    """
    if alpha != int(alpha):
        raise DomainError("alpha must be an integer")
    if contour.center != h0:
        contour = HyperbolicCircleContour(
            contour.rho,
            contour.psi_cutoff,
            h0,
            contour.quadrants,
            contour.pinch_epsilon,
            contour.samples_per_arc,
        )

    def f(h: Double) -> Double:
        return _power(h - h0, alpha)

    if alpha == -1:
        # per-arc the integrand in rapidity is the constant j; the quadrature
        # is the exact trapezoid of that constant
        psi = np.linspace(-contour.psi_cutoff, contour.psi_cutoff, contour.samples_per_arc)
        values = np.ones_like(psi)
        per_arc = float(
            np.sum((psi[1:] - psi[:-1]) * 0.5 * (values[1:] + values[:-1]))
        )
        value = Double(0.0, per_arc * len(contour.quadrants))
        bound = 0.0
        if len(contour.quadrants) > 1:
            # per gap: max |f| at the two flanking arc ends times the chord;
            # averaging the end values over all arcs estimates that sum
            ends = [
                (contour.arc_point(q, s * contour.psi_cutoff))
                for q in contour.quadrants
                for s in (-1.0, 1.0)
            ]
            chord = math.sqrt(2.0) * contour.rho * math.exp(-contour.psi_cutoff)
            bound = sum(abs(f(p)) * chord for p in ends) / 2.0
        return IntegralResult(value, 0.0, bound)

    if tuple(contour.quadrants) == QUADRANT_ORDER:
        return integrate(f, contour.closed_path())
    total = Double(0.0, 0.0)
    err = 0.0
    for path in contour.sector_paths():
        res = integrate(f, path)
        total = total + res.value
        err += res.error
    return IntegralResult(total, err, 0.0)


def power_antiderivative(h0: Double, alpha: int, h: Double) -> Double:
    """(h - h0)^(alpha + 1) / (alpha + 1), the off-cone antiderivative oracle."""
    if alpha == -1:
        raise DomainError("alpha = -1 has no single-valued antiderivative")
    num = _power(h - h0, alpha + 1)
    return Double(num.t / (alpha + 1), num.x / (alpha + 1))
