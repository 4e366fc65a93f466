"""Commutative-associative polynumber algebra P_n in its isotropic basis.

Multiplication is componentwise over the idempotent generators e_i, the
pseudonorm is the (signed, for odd n) n-th root of the component product, and
the scalar n-product is the matrix permanent of component rows.  P_3 is the
primary case: it carries two cyclic conjugations (dagger, double dagger), the
symmetric j-basis of three hyperbolic imaginary units, three-variable
holomorphy systems and the third-order harmonicity operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ComponentNotZero,
    DegenerateElement,
    DomainError,
    NotUnimodular,
    Overflow,
    ZeroDivisor,
)


@dataclass(frozen=True)
class Poly:
    """Polynumber with isotropic components ``a``; P_3 unless stated otherwise."""

    a: tuple[float, ...]

    def __init__(self, *components):
        if len(components) == 1 and isinstance(components[0], (tuple, list, np.ndarray)):
            components = tuple(components[0])
        object.__setattr__(self, "a", tuple(float(c) for c in components))

    @property
    def n(self) -> int:
        return len(self.a)

    def __add__(self, other):
        other = _coerce(other, self.n)
        return Poly(tuple(p + q for p, q in zip(self.a, other.a)))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other, self.n)
        return Poly(tuple(p - q for p, q in zip(self.a, other.a)))

    def __rsub__(self, other):
        return _coerce(other, self.n) - self

    def __mul__(self, other):
        other = _coerce(other, self.n)
        return Poly(tuple(p * q for p, q in zip(self.a, other.a)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, self.n)
        if any(c == 0.0 for c in other.a):
            raise ZeroDivisor(f"division by degenerate element {other}")
        return Poly(tuple(p / q for p, q in zip(self.a, other.a)))

    def __rtruediv__(self, other):
        return _coerce(other, self.n) / self

    def __neg__(self):
        return Poly(tuple(-c for c in self.a))

    def is_degenerate(self) -> bool:
        return any(c == 0.0 for c in self.a)

    def __repr__(self):
        return f"Poly{self.a!r}"


def _coerce(value, n: int) -> Poly:
    if isinstance(value, Poly):
        if value.n != n:
            raise ValueError(f"dimension mismatch: {value.n} vs {n}")
        return value
    if isinstance(value, (int, float)):
        return Poly((float(value),) * n)
    raise TypeError(f"cannot interpret {value!r} as a polynumber")


def unit(n: int = 3) -> Poly:
    """Multiplicative identity I = e_1 + ... + e_n."""
    return Poly((1.0,) * n)


def basis(i: int, n: int = 3) -> Poly:
    comps = [0.0] * n
    comps[i] = 1.0
    return Poly(tuple(comps))


I3 = unit(3)


def poly_arithmetic(a: Poly, b: Poly, op: str) -> Poly:
    ops = {
        "add": lambda: a + b,
        "sub": lambda: a - b,
        "mul": lambda: a * b,
        "div": lambda: a / b,
    }
    try:
        return ops[op]()
    except KeyError:
        raise ValueError(f"unknown operation {op!r}")


def dagger(a: Poly) -> Poly:
    """Cyclic conjugation: components shift right by one place."""
    return Poly(a.a[-1:] + a.a[:-1])


def ddagger(a: Poly) -> Poly:
    """Second cyclic conjugation (shift right by two places)."""
    return Poly(a.a[-2:] + a.a[:-2])


def conjugations(a: Poly) -> tuple[Poly, Poly]:
    return dagger(a), ddagger(a)


def pseudonorm(a: Poly) -> float:
    """(prod A_i)^(1/n); signed for odd n, zero on degenerate elements."""
    prod = math.prod(a.a)
    n = a.n
    if prod == 0.0:
        return 0.0
    if n % 2 == 0 and prod < 0.0:
        raise DomainError(
            f"even-dimensional pseudonorm undefined for negative product {prod}"
        )
    sign = -1.0 if prod < 0.0 else 1.0
    return sign * abs(prod) ** (1.0 / n)


def octant_index(a: Poly) -> Poly:
    """Unit sign vector of the coordinate octant containing ``a``."""
    if a.is_degenerate():
        raise DegenerateElement(f"octant undefined for degenerate {a}")
    return Poly(tuple(math.copysign(1.0, c) for c in a.a))


@dataclass(frozen=True)
class ExponentialAngles:
    """Norm plus logarithmic angles of the positive-octant representative."""

    chi: tuple[float, ...]
    norm: float
    octant: Poly

    def reconstruct(self) -> Poly:
        comps = tuple(self.norm * math.exp(c) for c in self.chi)
        return Poly(comps) * self.octant


def exp_and_angles(a: Poly) -> ExponentialAngles:
    """Exponential representation A = I_(j) * ||A'|| * exp(chi); sum(chi) = 0."""
    oct_ = octant_index(a)
    reduced = a / oct_
    norm = pseudonorm(reduced)
    chi = tuple(math.log(c / norm) for c in reduced.a)
    return ExponentialAngles(chi, norm, oct_)


def exp_poly(a: Poly) -> Poly:
    """Componentwise exponential (the standard series summed per component)."""
    if any(c > 709.782712893384 for c in a.a):
        raise Overflow(f"exp overflows at {a}")
    return Poly(tuple(math.exp(c) for c in a.a))


def permanent(matrix) -> float:
    """Matrix permanent: direct expansion for n <= 4, Ryser's formula beyond."""
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("permanent requires a square matrix")
    n = m.shape[0]
    if n <= 4:
        rows = range(n)
        return float(sum(math.prod(m[i, s[i]] for i in rows) for s in permutations(rows)))
    # Ryser: perm = (-1)^n sum_{S subset} (-1)^|S| prod_i sum_{j in S} m_ij
    total = 0.0
    for mask in range(1, 1 << n):
        cols = [j for j in range(n) if mask >> j & 1]
        prod = math.prod(m[i, cols].sum() for i in range(n))
        total += (-1.0) ** len(cols) * prod
    return float((-1.0) ** n * total)


def nproduct(a: Poly, b: Poly, c: Poly) -> float:
    """Scalar 3-product <A,B,C>: permanent of the component rows."""
    return permanent([a.a, b.a, c.a])


def nproduct_n(vectors: Sequence[Poly]) -> float:
    """n-linear Berwald-Moor form for P_n (n vectors of dimension n)."""
    n = vectors[0].n
    if len(vectors) != n:
        raise ValueError(f"need {n} vectors for the {n}-product")
    return permanent([v.a for v in vectors])


def tangent_metric(direction: int, u: Poly, v: Poly) -> float:
    """Quadratic metric tangent to the 3-form along e_j on the plane x_j = const.

    For j = 3 this is dX1 (x) dX2 + dX2 (x) dX1, a 2-dimensional Minkowski
    metric in lightcone coordinates.
    """
    if u.a[direction] != 0.0 or v.a[direction] != 0.0:
        raise ComponentNotZero(
            f"arguments must lie in the hyperplane x_{direction + 1} = 0"
        )
    return nproduct(basis(direction, u.n), u, v)


def on_indicatrix(a: Poly, tol: float = 1e-12) -> bool:
    """||A|| = 1 in absolute value (the Berwald-Moor unit sphere)."""
    return abs(abs(math.prod(a.a)) ** (1.0 / a.n) - 1.0) <= tol


def indicatrix_and_d2(a: Poly, sigma: Poly) -> tuple[bool, Poly]:
    """Apply a unimodular dilatation; indicatrix membership is preserved."""
    prod = math.prod(sigma.a)
    if sigma.is_degenerate() or abs(prod - 1.0) > 1e-12:
        raise NotUnimodular(f"sigma components must multiply to 1, got {prod}")
    image = sigma * a
    return on_indicatrix(image), image


# --- j-basis of three hyperbolic imaginary units -------------------------
#
# j1 = e1 - e2 - e3 (cyclic); the isotropic coordinates of x1 j1 + x2 j2 + x3 j3
# are xi_i = x_i - x_k - x_l and inversely x_i = -(xi_k + xi_l)/2.

def j_to_isotropic(x: tuple[float, float, float]) -> Poly:
    x1, x2, x3 = x
    return Poly(x1 - x2 - x3, -x1 + x2 - x3, -x1 - x2 + x3)


def isotropic_to_j(a: Poly) -> tuple[float, float, float]:
    if a.n != 3:
        raise ValueError("j-basis conversion is defined for P_3")
    xi1, xi2, xi3 = a.a
    return (-(xi2 + xi3) / 2.0, -(xi1 + xi3) / 2.0, -(xi1 + xi2) / 2.0)


def jbasis_unit(i: int) -> Poly:
    x = [0.0, 0.0, 0.0]
    x[i] = 1.0
    return j_to_isotropic(tuple(x))


# --- three-variable differential calculus ---------------------------------

def _partials_matrix(F: Callable[[Poly], Poly], at: Poly, step: float) -> np.ndarray:
    """Central-difference Jacobian dF_i/dxi_j at an isotropic point."""
    jac = np.empty((3, 3))
    base = list(at.a)
    for j in range(3):
        plus = base.copy()
        minus = base.copy()
        plus[j] += step
        minus[j] -= step
        fp = F(Poly(tuple(plus)))
        fm = F(Poly(tuple(minus)))
        for i in range(3):
            jac[i, j] = (fp.a[i] - fm.a[i]) / (2.0 * step)
    return jac


def poly_partials(F: Callable[[Poly], Poly], at: Poly, step: float = 1e-6):
    """The operators d/dh, d/dh_dagger, d/dh_ddagger applied to F.

    Each operator pairs e_i with a cyclically shifted d/dxi: the plain
    derivative takes the Jacobian diagonal, the conjugated ones its cyclic
    off-diagonals.
    """
    jac = _partials_matrix(F, at, step)
    d_h = Poly(jac[0, 0], jac[1, 1], jac[2, 2])
    d_hdag = Poly(jac[0, 2], jac[1, 0], jac[2, 1])
    d_hddag = Poly(jac[0, 1], jac[1, 2], jac[2, 0])
    return d_h, d_hdag, d_hddag


def _jbasis_partials_matrix(
    U: Callable[[tuple[float, float, float]], tuple[float, float, float]],
    at_x: tuple[float, float, float],
    step: float,
) -> np.ndarray:
    jac = np.empty((3, 3))
    base = list(at_x)
    for j in range(3):
        plus = base.copy()
        minus = base.copy()
        plus[j] += step
        minus[j] -= step
        up = U(tuple(plus))
        um = U(tuple(minus))
        for i in range(3):
            jac[i, j] = (up[i] - um[i]) / (2.0 * step)
    return jac


_J_MUL = None


def _jbasis_product_table():
    """Structure constants of j_i j_k expanded back in the j-basis."""
    global _J_MUL
    if _J_MUL is None:
        units = [jbasis_unit(i) for i in range(3)]
        table = np.empty((3, 3, 3))
        for i in range(3):
            for k in range(3):
                table[i, k] = isotropic_to_j(units[i] * units[k])
        _J_MUL = table
    return _J_MUL


def poly_partials_jbasis(
    U: Callable[[tuple[float, float, float]], tuple[float, float, float]],
    at_x: tuple[float, float, float],
    step: float = 1e-6,
):
    """Same three operators assembled from j-basis partials.

    Implements the quarter-sum forms d/dh = (1/4) sum_k j_sigma(k) (dbar + d_k)
    with the three cyclic assignments of units to coordinates; results are
    returned in the isotropic basis for direct comparison with
    :func:`poly_partials`.
    """
    jac = _jbasis_partials_matrix(U, at_x, step)  # jac[i, k] = dU_i/dx_k
    table = _jbasis_product_table()
    dbar = jac.sum(axis=1)

    def assemble(unit_for_coord):
        # operator = 1/4 sum_k j_{unit_for_coord[k]} (dbar + d_k) acting on U_i j_i
        coeffs = np.zeros(3)
        for k in range(3):
            op_on_ui = dbar + jac[:, k]  # component i: (dbar + d_k) U_i
            for i in range(3):
                coeffs += 0.25 * op_on_ui[i] * table[unit_for_coord[k], i]
        return j_to_isotropic(tuple(coeffs))

    d_h = assemble((0, 1, 2))
    d_hdag = assemble((1, 2, 0))
    d_hddag = assemble((2, 0, 1))
    return d_h, d_hdag, d_hddag


_CLASS_CONDITIONS = {
    "h": ("hdag", "hddag"),
    "hdag": ("h", "hddag"),
    "hddag": ("h", "hdag"),
    "h_hdag": ("hddag",),
    "h_hddag": ("hdag",),
    "hdag_hddag": ("h",),
}


def holomorphy_class(
    F: Callable[[Poly], Poly],
    sample_points: Sequence[Poly],
    step: float = 1e-6,
    tol: float = 1e-6,
) -> set[str]:
    """Maximal holomorphy classes satisfied at every sample.

    A class is reported when its defining partials vanish below ``tol`` at all
    samples and no strictly stronger satisfied class implies it.
    """
    if len(sample_points) < 10:
        raise ValueError("need at least 10 sample points")
    vanishing = {"h": True, "hdag": True, "hddag": True}
    for p in sample_points:
        d_h, d_hdag, d_hddag = poly_partials(F, p, step)
        scale = max(
            1.0, *(abs(c) for v in (d_h, d_hdag, d_hddag) for c in v.a)
        )
        for name, val in (("h", d_h), ("hdag", d_hdag), ("hddag", d_hddag)):
            if max(abs(c) for c in val.a) / scale > tol:
                vanishing[name] = False
    satisfied = {
        cls
        for cls, conds in _CLASS_CONDITIONS.items()
        if all(vanishing[c] for c in conds)
    }
    maximal = set()
    for cls in satisfied:
        conds = set(_CLASS_CONDITIONS[cls])
        if not any(
            conds < set(_CLASS_CONDITIONS[other]) for other in satisfied if other != cls
        ):
            maximal.add(cls)
    return maximal


def cr3_residual(
    U: Callable[[tuple[float, float, float]], tuple[float, float, float]],
    at: tuple[float, float, float],
    step: float = 1e-4,
) -> float:
    """Residual of the two j-basis holomorphy systems.

    Both 3x3 operator matrices (built from dbar = sum_i d_i and the
    differences d_i - d_j) are applied to (U1, U2, U3) by finite differences;
    the result is the largest row residual after gradient normalization.
    """
    jac = _jbasis_partials_matrix(U, at, step)
    d = [jac[:, k] for k in range(3)]  # d[k][i] = dU_i/dx_k
    dbar = jac.sum(axis=1)

    def diff(i, j, comp):
        return d[i][comp] - d[j][comp]

    rows = [
        -(dbar[0] + d[2][0]) + diff(1, 0, 1) + diff(0, 1, 2),
        diff(1, 2, 0) - (dbar[1] + d[0][1]) + diff(2, 1, 2),
        diff(0, 2, 0) + diff(2, 0, 1) - (dbar[2] + d[1][2]),
        -(dbar[0] + d[1][0]) + diff(0, 2, 1) + diff(2, 0, 2),
        diff(0, 1, 0) - (dbar[1] + d[2][1]) + diff(1, 0, 2),
        diff(2, 1, 0) + diff(1, 2, 1) - (dbar[2] + d[0][2]),
    ]
    scale = max(1.0, float(np.abs(jac).max()))
    return max(abs(r) for r in rows) / scale


def delta3_residual(
    U: Callable[[tuple[float, float, float]], float],
    at: tuple[float, float, float],
    step: float = 1e-2,
) -> float:
    """Third-order operator -(1/8)(d1+d2)(d2+d3)(d3+d1) by finite differences.

    The three factors are directional derivatives along (1,1,0), (0,1,1) and
    (1,0,1); composing their central differences gives an 8-point stencil.
    """
    dirs = (np.array([1.0, 1.0, 0.0]), np.array([0.0, 1.0, 1.0]), np.array([1.0, 0.0, 1.0]))
    base = np.asarray(at, dtype=float)
    total = 0.0
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                point = base + step * (s1 * dirs[0] + s2 * dirs[1] + s3 * dirs[2])
                total += s1 * s2 * s3 * U(tuple(point))
    return -0.125 * total / (2.0 * step) ** 3
