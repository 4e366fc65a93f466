"""Hot numeric loops: field-line tracing and relativistic steppers.

Each kernel exists twice: a scalar-loop version compiled with numba, and a
vectorized/pure-Python fallback.  ``HYPERFIELD_BACKEND`` (see
:mod:`hyperfield.backend`) selects which one the wrappers dispatch to; both
produce the same trajectories to floating-point reproducibility tested in
``tests/test_backend.py``.

The tracer works in isotropic coordinates, where every catalog field is a
componentwise formula:

* ln-family (source / vortex / vortex-source), strength A / conj(h):
  (a1/xi2, a2/xi1)
* multipole of order n: (c1 / xi2^(n+1), c2 / xi1^(n+1))
* cylinder in a uniform field: (E0 (1 - R^2/xi2^2), E0 (1 - R^2/xi1^2))

``dual`` multiplies the field by j, i.e. flips the second component.
"""

from __future__ import annotations

import math

import numpy as np

from .backend import USE_NUMBA, njit

KIND_LN_FAMILY = 0
KIND_MULTIPOLE = 1
KIND_CYLINDER = 2

STATUS_MAXLEN = 0
STATUS_CONE = 1
STATUS_BOX = 2
STATUS_NUMERIC = 3


@njit(cache=True)
def _field_iso(kind, p0, p1, p2, xi1, xi2, dual):
    if kind == KIND_LN_FAMILY:
        e1 = p0 / xi2
        e2 = p1 / xi1
    elif kind == KIND_MULTIPOLE:
        m = int(p2) + 1
        e1 = p0 / xi2**m
        e2 = p1 / xi1**m
    else:
        e1 = p0 * (1.0 - p1 * p1 / (xi2 * xi2))
        e2 = p0 * (1.0 - p1 * p1 / (xi1 * xi1))
    if dual:
        e2 = -e2
    return e1, e2


@njit(cache=True)
def _unit_step(kind, p0, p1, p2, xi1, xi2, dual):
    """Euclidean-normalized field direction in isotropic components."""
    e1, e2 = _field_iso(kind, p0, p1, p2, xi1, xi2, dual)
    et = 0.5 * (e1 + e2)
    ex = 0.5 * (e1 - e2)
    nrm = math.sqrt(et * et + ex * ex)
    if nrm == 0.0 or not math.isfinite(nrm):
        return 0.0, 0.0, False
    return e1 / nrm, e2 / nrm, True


@njit(cache=True)
def _trace_scalar(xi0, kind, params, dual, ds, nsteps, cone_tol, box, out, lengths, status):
    nseeds = xi0.shape[0]
    p0, p1, p2 = params[0], params[1], params[2]
    for s in range(nseeds):
        x1 = xi0[s, 0]
        x2 = xi0[s, 1]
        out[s, 0, 0] = x1
        out[s, 0, 1] = x2
        n = 1
        st = STATUS_MAXLEN
        for _ in range(nsteps):
            scale = max(1.0, abs(x1), abs(x2))
            if min(abs(x1), abs(x2)) <= cone_tol * scale:
                st = STATUS_CONE
                break
            t = 0.5 * (x1 + x2)
            x = 0.5 * (x1 - x2)
            if abs(t) > box or abs(x) > box:
                st = STATUS_BOX
                break
            k11, k12, ok1 = _unit_step(kind, p0, p1, p2, x1, x2, dual)
            k21, k22, ok2 = _unit_step(
                kind, p0, p1, p2, x1 + 0.5 * ds * k11, x2 + 0.5 * ds * k12, dual
            )
            k31, k32, ok3 = _unit_step(
                kind, p0, p1, p2, x1 + 0.5 * ds * k21, x2 + 0.5 * ds * k22, dual
            )
            k41, k42, ok4 = _unit_step(
                kind, p0, p1, p2, x1 + ds * k31, x2 + ds * k32, dual
            )
            if not (ok1 and ok2 and ok3 and ok4):
                st = STATUS_NUMERIC
                break
            new1 = x1 + (ds / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
            new2 = x2 + (ds / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42)
            # a step may not cross the cone: points stay within one quadrant
            if new1 * x1 <= 0.0 or new2 * x2 <= 0.0:
                st = STATUS_CONE
                break
            x1 = new1
            x2 = new2
            out[s, n, 0] = x1
            out[s, n, 1] = x2
            n += 1
        lengths[s] = n
        status[s] = st


def _field_iso_vec(kind, p0, p1, p2, xi1, xi2, dual):
    if kind == KIND_LN_FAMILY:
        e1 = p0 / xi2
        e2 = p1 / xi1
    elif kind == KIND_MULTIPOLE:
        m = int(p2) + 1
        e1 = p0 / xi2**m
        e2 = p1 / xi1**m
    else:
        e1 = p0 * (1.0 - p1 * p1 / (xi2 * xi2))
        e2 = p0 * (1.0 - p1 * p1 / (xi1 * xi1))
    if dual:
        e2 = -e2
    return e1, e2


def _unit_step_vec(kind, p0, p1, p2, xi1, xi2, dual):
    e1, e2 = _field_iso_vec(kind, p0, p1, p2, xi1, xi2, dual)
    et = 0.5 * (e1 + e2)
    ex = 0.5 * (e1 - e2)
    nrm = np.sqrt(et * et + ex * ex)
    ok = np.isfinite(nrm) & (nrm > 0.0)
    safe = np.where(ok, nrm, 1.0)
    return e1 / safe, e2 / safe, ok


def _trace_vectorized(xi0, kind, params, dual, ds, nsteps, cone_tol, box, out, lengths, status):
    nseeds = xi0.shape[0]
    p0, p1, p2 = params
    x1 = xi0[:, 0].copy()
    x2 = xi0[:, 1].copy()
    out[:, 0, 0] = x1
    out[:, 0, 1] = x2
    lengths[:] = 1
    status[:] = STATUS_MAXLEN
    active = np.ones(nseeds, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(nsteps):
            if not active.any():
                break
            scale = np.maximum(1.0, np.maximum(np.abs(x1), np.abs(x2)))
            on_cone = np.minimum(np.abs(x1), np.abs(x2)) <= cone_tol * scale
            t = 0.5 * (x1 + x2)
            x = 0.5 * (x1 - x2)
            out_box = (np.abs(t) > box) | (np.abs(x) > box)
            status[active & on_cone] = STATUS_CONE
            status[active & ~on_cone & out_box] = STATUS_BOX
            active &= ~(on_cone | out_box)
            if not active.any():
                break
            k11, k12, ok1 = _unit_step_vec(kind, p0, p1, p2, x1, x2, dual)
            k21, k22, ok2 = _unit_step_vec(
                kind, p0, p1, p2, x1 + 0.5 * ds * k11, x2 + 0.5 * ds * k12, dual
            )
            k31, k32, ok3 = _unit_step_vec(
                kind, p0, p1, p2, x1 + 0.5 * ds * k21, x2 + 0.5 * ds * k22, dual
            )
            k41, k42, ok4 = _unit_step_vec(
                kind, p0, p1, p2, x1 + ds * k31, x2 + ds * k32, dual
            )
            ok = ok1 & ok2 & ok3 & ok4
            status[active & ~ok] = STATUS_NUMERIC
            active &= ok
            new1 = x1 + (ds / 6.0) * (k11 + 2.0 * k21 + 2.0 * k31 + k41)
            new2 = x2 + (ds / 6.0) * (k12 + 2.0 * k22 + 2.0 * k32 + k42)
            crossing = (new1 * x1 <= 0.0) | (new2 * x2 <= 0.0)
            status[active & crossing] = STATUS_CONE
            active &= ~crossing
            x1 = np.where(active, new1, x1)
            x2 = np.where(active, new2, x2)
            idx = np.nonzero(active)[0]
            out[idx, lengths[idx], 0] = x1[idx]
            out[idx, lengths[idx], 1] = x2[idx]
            lengths[idx] += 1


def trace_many(
    xi0: np.ndarray,
    kind: int,
    params: tuple[float, float, float],
    dual: bool,
    ds: float,
    nsteps: int,
    cone_tol: float,
    box: float,
):
    """Trace field lines from all seeds; returns (points, lengths, status).

    ``points`` has shape (nseeds, nsteps + 1, 2) in isotropic coordinates,
    padded with NaN beyond each line's recorded length.
    """
    xi0 = np.ascontiguousarray(xi0, dtype=np.float64)
    nseeds = xi0.shape[0]
    out = np.full((nseeds, nsteps + 1, 2), np.nan)
    lengths = np.zeros(nseeds, dtype=np.int64)
    status = np.zeros(nseeds, dtype=np.int64)
    par = np.asarray(params, dtype=np.float64)
    if USE_NUMBA:
        _trace_scalar(xi0, kind, par, dual, ds, nsteps, cone_tol, box, out, lengths, status)
    else:
        _trace_vectorized(xi0, kind, par, dual, ds, nsteps, cone_tol, box, out, lengths, status)
    return out, lengths, status


# --- relativistic steppers -------------------------------------------------


@njit(cache=True)
def _lorentz_const_scalar(state0, q_over_m, efield, ds, nsteps, out):
    """RK4 for dh/ds = V, dV/ds = (q/m) E j V with constant scalar E.

    j V = (V_x, V_t): multiplication by j swaps components.
    """
    t, x, vt, vx = state0[0], state0[1], state0[2], state0[3]
    out[0, 0] = t
    out[0, 1] = x
    out[0, 2] = vt
    out[0, 3] = vx
    a = q_over_m * efield
    for k in range(nsteps):
        # stage derivatives: (dt, dx, dvt, dvx) = (vt, vx, a*vx, a*vt)
        k1t, k1x, k1vt, k1vx = vt, vx, a * vx, a * vt
        vt2, vx2 = vt + 0.5 * ds * k1vt, vx + 0.5 * ds * k1vx
        k2t, k2x, k2vt, k2vx = vt2, vx2, a * vx2, a * vt2
        vt3, vx3 = vt + 0.5 * ds * k2vt, vx + 0.5 * ds * k2vx
        k3t, k3x, k3vt, k3vx = vt3, vx3, a * vx3, a * vt3
        vt4, vx4 = vt + ds * k3vt, vx + ds * k3vx
        k4t, k4x, k4vt, k4vx = vt4, vx4, a * vx4, a * vt4
        t += (ds / 6.0) * (k1t + 2 * k2t + 2 * k3t + k4t)
        x += (ds / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        vt += (ds / 6.0) * (k1vt + 2 * k2vt + 2 * k3vt + k4vt)
        vx += (ds / 6.0) * (k1vx + 2 * k2vx + 2 * k3vx + k4vx)
        out[k + 1, 0] = t
        out[k + 1, 1] = x
        out[k + 1, 2] = vt
        out[k + 1, 3] = vx


def _lorentz_const_python(state0, q_over_m, efield, ds, nsteps, out):
    t, x, vt, vx = (float(v) for v in state0)
    out[0] = (t, x, vt, vx)
    a = q_over_m * efield
    for k in range(nsteps):
        k1t, k1x, k1vt, k1vx = vt, vx, a * vx, a * vt
        vt2, vx2 = vt + 0.5 * ds * k1vt, vx + 0.5 * ds * k1vx
        k2t, k2x, k2vt, k2vx = vt2, vx2, a * vx2, a * vt2
        vt3, vx3 = vt + 0.5 * ds * k2vt, vx + 0.5 * ds * k2vx
        k3t, k3x, k3vt, k3vx = vt3, vx3, a * vx3, a * vt3
        vt4, vx4 = vt + ds * k3vt, vx + ds * k3vx
        k4t, k4x, k4vt, k4vx = vt4, vx4, a * vx4, a * vt4
        t += (ds / 6.0) * (k1t + 2 * k2t + 2 * k3t + k4t)
        x += (ds / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        vt += (ds / 6.0) * (k1vt + 2 * k2vt + 2 * k3vt + k4vt)
        vx += (ds / 6.0) * (k1vx + 2 * k2vx + 2 * k3vx + k4vx)
        out[k + 1] = (t, x, vt, vx)


def lorentz_const_run(state0, q_over_m: float, efield: float, ds: float, nsteps: int):
    """Constant-field Lorentz trajectory; state rows are (t, x, V_t, V_x)."""
    out = np.empty((nsteps + 1, 4))
    s0 = np.asarray(state0, dtype=np.float64)
    if USE_NUMBA:
        _lorentz_const_scalar(s0, q_over_m, efield, ds, nsteps, out)
    else:
        _lorentz_const_python(s0, q_over_m, efield, ds, nsteps, out)
    return out


@njit(cache=True)
def _force_scalar(p0, mass, f, ds, nsteps, out):
    """RK4 for dP/ds = (v f gamma, f gamma) with v = P_x/P_t read off P."""
    pt, px = p0[0], p0[1]
    out[0, 0] = pt
    out[0, 1] = px
    for k in range(nsteps):
        def rhs(pt_, px_):
            v = px_ / pt_
            g = 1.0 / math.sqrt(1.0 - v * v)
            return v * f * g, f * g

        k1t, k1x = rhs(pt, px)
        k2t, k2x = rhs(pt + 0.5 * ds * k1t, px + 0.5 * ds * k1x)
        k3t, k3x = rhs(pt + 0.5 * ds * k2t, px + 0.5 * ds * k2x)
        k4t, k4x = rhs(pt + ds * k3t, px + ds * k3x)
        pt += (ds / 6.0) * (k1t + 2 * k2t + 2 * k3t + k4t)
        px += (ds / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        out[k + 1, 0] = pt
        out[k + 1, 1] = px


def _force_python(p0, mass, f, ds, nsteps, out):
    pt, px = float(p0[0]), float(p0[1])
    out[0] = (pt, px)

    def rhs(pt_, px_):
        v = px_ / pt_
        g = 1.0 / math.sqrt(1.0 - v * v)
        return v * f * g, f * g

    for k in range(nsteps):
        k1t, k1x = rhs(pt, px)
        k2t, k2x = rhs(pt + 0.5 * ds * k1t, px + 0.5 * ds * k1x)
        k3t, k3x = rhs(pt + 0.5 * ds * k2t, px + 0.5 * ds * k2x)
        k4t, k4x = rhs(pt + ds * k3t, px + ds * k3x)
        pt += (ds / 6.0) * (k1t + 2 * k2t + 2 * k3t + k4t)
        px += (ds / 6.0) * (k1x + 2 * k2x + 2 * k3x + k4x)
        out[k + 1] = (pt, px)


def force_run(p0, mass: float, f: float, ds: float, nsteps: int):
    """Constant proper-force 2-momentum trajectory (rows P_t, P_x)."""
    out = np.empty((nsteps + 1, 2))
    arr = np.asarray(p0, dtype=np.float64)
    if USE_NUMBA:
        _force_scalar(arr, mass, f, ds, nsteps, out)
    else:
        _force_python(arr, mass, f, ds, nsteps, out)
    return out
