"""Command-line front end.

Subcommands: trace (field lines to CSV/SVG), integrate (residue dichotomy),
verify (named check suites), poly (polynumber utilities), srt-sim
(relativistic trajectories) and render (coordinate-net images and wave
slices).  Exit codes: 0 success, 2 usage/config error, 3 numerical failure.

A plain ``key=value`` config file may supply any long-option value; flags
given on the command line win.  Unknown config keys are rejected with the
full list of accepted keys.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import fields, poly, srt
from .contour import HyperbolicCircleContour, residue_integral
from .dnum import Double, Region, exp, ln, pow_int, zhukowskij
from .errors import ConfigError, HyperfieldError
from .plotio import curves_svg, field_lines_svg, fmt, write_field_lines_csv
from .verify import SUITES, run_suite

QUADRANT_BY_NAME = {
    "I": Region.QUADRANT_I,
    "II": Region.QUADRANT_II,
    "III": Region.QUADRANT_III,
    "IV": Region.QUADRANT_IV,
}

RENDER_MAPS = {
    "square": lambda h: pow_int(h, 2),
    "cube": lambda h: pow_int(h, 3),
    "inverse": lambda h: pow_int(h, -1),
    "exp": exp,
    "ln": ln,
    "zhukowskij": zhukowskij,
}


def _parse_seeds(text: str) -> list[Double]:
    seeds = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise ConfigError(f"seed must be 't,x', got {chunk!r}")
        seeds.append(Double(float(parts[0]), float(parts[1])))
    return seeds


def _parse_bbox(text: str) -> tuple[float, float, float, float]:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ConfigError(f"bbox must be 'tmin,tmax,xmin,xmax', got {text!r}")
    return tuple(parts)


def _parse_triple(text: str) -> poly.Poly:
    parts = [float(p) for p in text.split(",")]
    return poly.Poly(tuple(parts))


def _read_config_file(path: str) -> dict[str, str]:
    values = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser):
    """Fill namespace entries (still at their None sentinel) from the file."""
    if getattr(args, "config", None) is None:
        return
    accepted = {
        act.dest
        for act in parser._actions
        if act.dest not in ("help", "config", "command")
    }
    values = _read_config_file(args.config)
    unknown = sorted(set(values) - accepted)
    if unknown:
        raise ConfigError(
            f"unknown config keys {unknown}; accepted keys: {sorted(accepted)}"
        )
    for key, raw in values.items():
        if getattr(args, key, None) is None:
            setattr(args, key, raw)


def _required(args, name: str):
    value = getattr(args, name)
    if value is None:
        raise ConfigError(f"missing required option --{name.replace('_', '-')}")
    return value


def _spec_from_args(args) -> fields.PotentialSpec:
    kind = _required(args, "potential")
    q = float(args.q) if args.q is not None else 1.0
    m = float(args.m) if args.m is not None else 1.0
    if kind == "source":
        return fields.Source(q)
    if kind == "vortex":
        return fields.Vortex(m)
    if kind == "vortex-source":
        return fields.VortexSource(q, m)
    if kind == "multipole":
        n = int(args.n) if args.n is not None else 1
        qe = float(args.qe) if args.qe is not None else 1.0
        qm = float(args.qm) if args.qm is not None else 0.0
        return fields.Multipole(n, qe, qm)
    if kind == "cylinder":
        e0 = float(args.e0) if args.e0 is not None else 1.0
        radius = float(args.radius) if args.radius is not None else 1.0
        return fields.CylinderUniform(e0, radius)
    raise ConfigError(f"unknown potential {kind!r}")


# --- subcommands -------------------------------------------------------------


def cmd_trace(args, parser) -> int:
    _apply_config(args, parser)
    spec = _spec_from_args(args)
    seeds = _parse_seeds(_required(args, "seeds"))
    if not seeds:
        raise ConfigError("seed list is empty")
    ds = float(args.ds) if args.ds is not None else 1e-3
    steps = int(args.steps) if args.steps is not None else 10_000
    bbox = _parse_bbox(args.bbox) if args.bbox is not None else (-6.0, 6.0, -6.0, 6.0)
    box_limit = max(abs(v) for v in bbox)
    lines = fields.trace_field_lines(
        spec,
        seeds,
        ds=ds,
        max_len=ds * steps,
        use_dual=bool(args.use_dual),
        box=box_limit,
    )
    out = _required(args, "out")
    write_field_lines_csv(lines, out)
    print(f"wrote {len(lines)} lines to {out}")
    for idx, line in enumerate(lines):
        print(
            f"line {idx}: nodes={len(line)} status={line.status} "
            f"invariant-drift={line.invariant_drift:.3e}"
        )
    if args.svg is not None:
        with open(args.svg, "w") as fh:
            fh.write(field_lines_svg(lines, bbox))
        print(f"wrote SVG to {args.svg}")
    return 0


def cmd_integrate(args, parser) -> int:
    _apply_config(args, parser)
    alpha = int(_required(args, "alpha"))
    rho = float(args.rho) if args.rho is not None else 1.0
    cutoff = float(args.cutoff) if args.cutoff is not None else 2.0
    if rho <= 0 or cutoff <= 0:
        raise ConfigError("rho and cutoff must be positive")
    center = Double(0.0, 0.0)
    if args.center is not None:
        t, x = (float(p) for p in args.center.split(","))
        center = Double(t, x)
    if args.quadrants is not None:
        quads = tuple(QUADRANT_BY_NAME[name.strip()] for name in args.quadrants.split(","))
    else:
        quads = tuple(QUADRANT_BY_NAME.values())
    pinch = float(args.pinch) if args.pinch is not None else None
    samples = int(args.samples) if args.samples is not None else 4097
    contour = HyperbolicCircleContour(rho, cutoff, center, quads, pinch, samples)
    res = residue_integral(center, alpha, contour)
    print(f"integral of (h - h0)^({alpha}) dh over {len(quads)} arc(s), Psi = {cutoff}")
    print(f"value = {fmt(res.value.t)} + j {fmt(res.value.x)}")
    print(f"quadrature error <= {res.error:.3e}, pinch bound <= {res.pinch_bound:.3e}")
    if alpha == -1:
        print(f"implied l_H(Psi) per arc = {fmt(res.value.x / len(quads))}")
    return 0


def cmd_verify(args, parser) -> int:
    _apply_config(args, parser)
    name = args.suite
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    checks, all_pass = run_suite(name)
    width = max(len(c[0]) for c in checks)
    for label, residual, tol in checks:
        status = "PASS" if residual <= tol else "FAIL"
        print(f"{label:<{width}}  residual={residual:.3e}  tol={tol:.3e}  {status}")
    print(f"suite {name}: {'all passed' if all_pass else 'FAILURES PRESENT'}")
    return 0 if all_pass else 1


def cmd_poly(args, parser) -> int:
    _apply_config(args, parser)
    op = _required(args, "op")
    a = _parse_triple(_required(args, "a"))
    if op == "norm":
        print(fmt(poly.pseudonorm(a)))
    elif op == "angles":
        ea = poly.exp_and_angles(a)
        print(f"norm = {fmt(ea.norm)}")
        print(f"chi = {', '.join(fmt(c) for c in ea.chi)}")
        print(f"octant = {', '.join(fmt(c) for c in ea.octant.a)}")
    elif op == "nproduct":
        b = _parse_triple(_required(args, "b"))
        c = _parse_triple(_required(args, "c"))
        print(fmt(poly.nproduct(a, b, c)))
    elif op == "convert-to-j":
        print(", ".join(fmt(v) for v in poly.isotropic_to_j(a)))
    elif op == "convert-from-j":
        print(", ".join(fmt(v) for v in poly.j_to_isotropic(tuple(a.a)).a))
    else:
        raise ConfigError(
            "unknown op; expected norm|angles|nproduct|convert-to-j|convert-from-j"
        )
    return 0


def cmd_srt_sim(args, parser) -> int:
    _apply_config(args, parser)
    mode = _required(args, "mode")
    mass = float(args.mass) if args.mass is not None else 1.0
    ds = float(args.ds) if args.ds is not None else 1e-3
    steps = int(args.steps) if args.steps is not None else 1000
    v0 = float(args.v0) if args.v0 is not None else 0.0
    g = 1.0 / math.sqrt(1.0 - v0 * v0)
    state = srt.ParticleState(Double(0, 0), Double(g, g * v0), mass)
    out = _required(args, "out")
    if mode == "force":
        f = float(args.f) if args.f is not None else 1.0
        traj = srt.dynamics_run(state, f, ds, steps)
        with open(out, "w") as fh:
            fh.write("s,p_t,p_x,v\n")
            for s, pt, px in traj:
                fh.write(f"{fmt(s)},{fmt(pt)},{fmt(px)},{fmt(px / pt)}\n")
    elif mode == "lorentz":
        q = float(args.q) if args.q is not None else 1.0
        efield = float(args.efield) if args.efield is not None else 1.0
        traj = srt.lorentz_force_run(state, q, efield, ds, steps)
        with open(out, "w") as fh:
            fh.write("s,t,x,V_t,V_x,norm_drift\n")
            for s, t, x, vt, vx in traj:
                fh.write(
                    f"{fmt(s)},{fmt(t)},{fmt(x)},{fmt(vt)},{fmt(vx)},"
                    f"{fmt(vt * vt - vx * vx - 1.0)}\n"
                )
    else:
        raise ConfigError(f"unknown mode {mode!r}; expected force|lorentz")
    print(f"wrote {steps + 1} rows to {out}")
    return 0


def _polar_net_curves(quadrant: Region, rho_values, psi_values, psi_span, rho_span, n=257):
    from .dnum import PolarForm, from_polar

    curves = []
    for rho in rho_values:
        pts = []
        for psi in np.linspace(-psi_span, psi_span, n):
            h = from_polar(PolarForm(quadrant, float(rho), float(psi)))
            pts.append(h)
        curves.append(pts)
    for psi in psi_values:
        pts = []
        for rho in np.linspace(rho_span[0], rho_span[1], n):
            h = from_polar(PolarForm(quadrant, float(rho), float(psi)))
            pts.append(h)
        curves.append(pts)
    return curves


def cmd_render(args, parser) -> int:
    _apply_config(args, parser)
    out = _required(args, "out")
    if args.wave:
        R = float(args.R) if args.R is not None else 1.0
        phi0 = float(args.phi0) if args.phi0 is not None else 1.0
        slice_times = (
            [float(s) for s in args.slices.split(",")]
            if args.slices is not None
            else [1.0, 2.0, 3.0, 4.0]
        )
        curves = []
        for t in slice_times:
            xs = np.linspace(-t * (1 - 1e-6), t * (1 - 1e-6), 513)
            pts = [
                (float(x), fields.wave_boundary_solution(R, phi0, Double(t, float(x))))
                for x in xs
            ]
            curves.append(pts)
        lo = min(p[1] for c in curves for p in c)
        hi = max(p[1] for c in curves for p in c)
        xmax = max(slice_times)
        svg = curves_svg(curves, (-xmax, xmax, lo, hi), cone=False)
        with open(out, "w") as fh:
            fh.write(svg)
        print(f"wrote wave slices t = {slice_times} to {out}")
        return 0
    map_name = _required(args, "map")
    if map_name not in RENDER_MAPS:
        raise ConfigError(f"unknown mapping {map_name!r}; available: {sorted(RENDER_MAPS)}")
    mapping = RENDER_MAPS[map_name]
    quadrant = QUADRANT_BY_NAME[args.quadrant] if args.quadrant is not None else Region.QUADRANT_I
    rho_lines = int(args.rho_lines) if args.rho_lines is not None else 7
    psi_lines = int(args.psi_lines) if args.psi_lines is not None else 7
    psi_span = float(args.psi_span) if args.psi_span is not None else 1.2
    rho_values = np.linspace(0.4, 1.6, rho_lines)
    psi_values = np.linspace(-psi_span, psi_span, psi_lines)
    net = _polar_net_curves(quadrant, rho_values, psi_values, psi_span, (0.4, 1.6))
    curves = [[(p.t, p.x) for p in (mapping(h) for h in curve)] for curve in net]
    ts = [pt[0] for c in curves for pt in c]
    xs = [pt[1] for c in curves for pt in c]
    pad_t = 0.05 * (max(ts) - min(ts) + 1e-9)
    pad_x = 0.05 * (max(xs) - min(xs) + 1e-9)
    bbox = (min(ts) - pad_t, max(ts) + pad_t, min(xs) - pad_x, max(xs) + pad_x)
    svg = curves_svg(curves, bbox, cone=True)
    with open(out, "w") as fh:
        fh.write(svg)
    print(f"wrote net image of {map_name} ({len(curves)} curves) to {out}")
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfield",
        description="Field theory on the plane of double numbers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_trace = sub.add_parser("trace", help="trace field lines to CSV (and SVG)")
    p_trace.add_argument("--config")
    p_trace.add_argument(
        "--potential",
        choices=["source", "vortex", "vortex-source", "multipole", "cylinder"],
    )
    for flag in ("--q", "--m", "--n", "--qe", "--qm", "--e0", "--radius"):
        p_trace.add_argument(flag)
    p_trace.add_argument("--seeds", help="semicolon-separated 't,x' pairs")
    p_trace.add_argument("--ds")
    p_trace.add_argument("--steps")
    p_trace.add_argument("--use-dual", action="store_const", const=True, default=None)
    p_trace.add_argument("--bbox", help="tmin,tmax,xmin,xmax")
    p_trace.add_argument("--out")
    p_trace.add_argument("--svg")
    p_trace.set_defaults(func=cmd_trace, subparser=p_trace)

    p_int = sub.add_parser("integrate", help="residue dichotomy integrals")
    p_int.add_argument("--config")
    p_int.add_argument("--alpha")
    p_int.add_argument("--rho")
    p_int.add_argument("--cutoff")
    p_int.add_argument("--center")
    p_int.add_argument("--quadrants", help="comma list from I,II,III,IV")
    p_int.add_argument("--pinch")
    p_int.add_argument("--samples")
    p_int.set_defaults(func=cmd_integrate, subparser=p_int)

    p_ver = sub.add_parser("verify", help="run a named check suite")
    p_ver.add_argument("suite")
    p_ver.add_argument("--config")
    p_ver.set_defaults(func=cmd_verify, subparser=p_ver)

    p_poly = sub.add_parser("poly", help="polynumber utilities")
    p_poly.add_argument("--config")
    p_poly.add_argument("--op")
    p_poly.add_argument("--a")
    p_poly.add_argument("--b")
    p_poly.add_argument("--c")
    p_poly.set_defaults(func=cmd_poly, subparser=p_poly)

    p_srt = sub.add_parser("srt-sim", help="relativistic trajectory simulations")
    p_srt.add_argument("--config")
    p_srt.add_argument("--mode")
    p_srt.add_argument("--f")
    p_srt.add_argument("--q")
    p_srt.add_argument("--efield")
    p_srt.add_argument("--mass")
    p_srt.add_argument("--v0")
    p_srt.add_argument("--ds")
    p_srt.add_argument("--steps")
    p_srt.add_argument("--out")
    p_srt.set_defaults(func=cmd_srt_sim, subparser=p_srt)

    p_rend = sub.add_parser("render", help="net images and wave slices to SVG")
    p_rend.add_argument("--config")
    p_rend.add_argument("--map")
    p_rend.add_argument("--quadrant", choices=list(QUADRANT_BY_NAME))
    p_rend.add_argument("--rho-lines")
    p_rend.add_argument("--psi-lines")
    p_rend.add_argument("--psi-span")
    p_rend.add_argument("--wave", action="store_const", const=True, default=None)
    p_rend.add_argument("--R")
    p_rend.add_argument("--phi0")
    p_rend.add_argument("--slices")
    p_rend.add_argument("--out")
    p_rend.set_defaults(func=cmd_render, subparser=p_rend)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, args.subparser)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except HyperfieldError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
