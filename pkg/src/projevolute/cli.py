"""Command-line entry point: ``projevolute <command> ...``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import hexagon as hx
from . import levelset as ls
from .config import RunConfig, default_ode_tol
from .errors import EvoluteError
from .evolute import iterate_evolute
from .frieze import coefficients_from_moduli, frieze_rows, monodromy_check
from .identities import run_identity_suite, run_jacobian_suite
from .pentagon import (
    PentagonModuli,
    degeneracy_report,
    invariant_I,
    pentagon_from_moduli,
    t_map,
)
from .serialize import dump_json, format_scalar, load_polygon, polygon_to_json, write_csv
from .svg import COLORS, Panel, Series, emit_svg

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass



def _scalar(text: str, exact: bool):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {text!r}") from exc
    return v if exact else float(v)


def _config(args, default_exact: bool) -> RunConfig:
    exact = default_exact if args.exact is None else args.exact
    tol = getattr(args, "tol", None)
    ode_tol = default_ode_tol()
    if getattr(args, "ode_tol", None) is not None:
        ode_tol = args.ode_tol
    kw = dict(exact=exact, ode_tol=ode_tol, seed=getattr(args, "seed", 0) or 0)
    for name in ("samples", "points", "iters", "count", "csv", "svg", "json"):
        v = getattr(args, name, None)
        if v is not None:
            kw[name] = v
    cfg = RunConfig(**kw)
    if tol is not None and tol <= 0:
        raise UsageError("--tol must be positive")
    return cfg


# -- commands --------------------------------------------------------------------


def cmd_evolute(args) -> int:
    cfg = _config(args, default_exact=True)
    if args.polygon:
        P = load_polygon(args.polygon)
    elif args.x is not None and args.y is not None:
        P = pentagon_from_moduli(PentagonModuli(_scalar(args.x, cfg.exact), _scalar(args.y, cfg.exact)))
    else:
        raise UsageError("give --polygon PATH or --x and --y")
    orbit = iterate_evolute(P, args.iters)
    for k, Q in enumerate(orbit.polygons):
        print(f"T^{k}:")
        for v in Q.vertices:
            print("  [" + " : ".join(format_scalar(c) for c in v.canonical()) + "]")
    if orbit.stopped:
        print(f"stopped: {orbit.stopped}")
    if cfg.json:
        dump_json({"config": cfg.as_dict(), "polygons": [polygon_to_json(Q) for Q in orbit.polygons],
                   "stopped": orbit.stopped}, cfg.json)
    if cfg.svg:
        panel = Panel("polygon and its evolutes")
        for k, Q in enumerate(orbit.polygons[:2]):
            # vertices at infinity are left out of the drawing
            pts = [(v.a / v.c, v.b / v.c) for v in Q.to_float().vertices if abs(v.c) > 1e-12 * v.norm()]
            panel.series.append(Series(pts, "polygon", COLORS[k % len(COLORS)], f"T^{k}"))
        emit_svg([panel], cfg.svg)
    return EXIT_OK


def cmd_pentagon_map(args) -> int:
    cfg = _config(args, default_exact=True)
    m = PentagonModuli(_scalar(args.x, cfg.exact), _scalar(args.y, cfg.exact))
    bad = degeneracy_report(m)
    if bad:
        print(f"degenerate: {', '.join(sorted(bad))}")
        return EXIT_FAILED
    records = []
    for k in range(args.iters + 1):
        rec = {"k": k, "x": m.x, "y": m.y}
        try:
            rec["I"] = invariant_I(m)
        except ZeroDivisionError:
            rec["I"] = None
        rec["degenerate"] = sorted(degeneracy_report(m))
        records.append(rec)
        label = "P" if k == 0 else ("T" if k == 1 else f"T^{k}")
        extra = f"  degenerate: {', '.join(rec['degenerate'])}" if rec["degenerate"] else ""
        I = "undefined" if rec["I"] is None else format_scalar(rec["I"])
        print(f"{label}=({format_scalar(m.x)}, {format_scalar(m.y)}), I={I}{extra}")
        if k == args.iters:
            break
        try:
            m = t_map(m)
        except (EvoluteError, ZeroDivisionError) as exc:
            print(f"stopped: T undefined ({exc})")
            break
    if cfg.json:
        dump_json({"config": cfg.as_dict(), "orbit": records}, cfg.json)
    return EXIT_OK


def cmd_pentagon_levelset(args) -> int:
    cfg = _config(args, default_exact=False)
    cfg.require_approx("level-set sampling")
    panels, rows = [], []
    for r in args.r:
        if ls.is_singular_level(r):
            raise UsageError(f"r = {r} is a singular level")
        samples = ls.flow_samples(r, cfg.samples, cfg.ode_tol)
        for row in samples:
            rows.append({"r": r, **row})
        curve = ls.sample_level_curve(r)
        kinds = [c.kind for c in curve.components]
        print(f"r={format_scalar(r)}: {len(kinds)} component(s): {', '.join(kinds)}")
        for c in curve.components:
            print(f"  {c.kind}: lambda={format_scalar(ls.component_period(r, c.kind, cfg.ode_tol))}")
        panel = Panel(f"I = {r:g}", bounds=(-6.0, 6.0, -6.0, 6.0))
        for k, c in enumerate(curve.components):
            panel.series.append(Series([tuple(p) for p in c.points], "scatter", COLORS[k], c.kind))
        panels.append(panel)
    if cfg.csv:
        write_csv(cfg.csv, ["r", "component_id", "kind", "x", "y", "theta"], rows)
    if cfg.svg:
        emit_svg(panels, cfg.svg)
    if cfg.json:
        dump_json({"config": cfg.as_dict(), "samples": rows}, cfg.json)
    return EXIT_OK


def cmd_pentagon_conjugacy(args) -> int:
    cfg = _config(args, default_exact=False)
    cfg.require_approx("flow-time coordinates")
    tol = args.tol if args.tol is not None else 1e-6
    if ls.is_singular_level(args.r):
        raise UsageError(f"r = {args.r} is a singular level")
    rep = ls.verify_conjugacy(args.r, n=cfg.points, tol=tol, ode_tol=cfg.ode_tol)
    print(f"r={format_scalar(args.r)} lambda={format_scalar(rep.period)}")
    print(f"offset c = {rep.offset_fifths:.9f} * lambda/5, fixed point theta* = {format_scalar(rep.fixed_theta)}")
    print(f"samples={len(rep.samples)} skipped={len(rep.skipped)}")
    print(f"max |theta(T^2 p) + 4 theta(p)| mod lambda = {rep.max_residual:.3e} (limit {tol * rep.period:.3e})")
    print(f"max relative |d(T^2) X_I + 4 X_I| = {rep.max_differential:.3e}")
    print("PASS" if rep.passed else "FAIL")
    if cfg.json:
        out = {"config": cfg.as_dict(), "r": args.r, "lambda": rep.period, "passed": rep.passed,
               "samples": [{k: s[k] for k in ("x", "y", "theta", "theta_image", "residual")}
                           for s in rep.samples],
               "offset": rep.offset, "fixed_theta": rep.fixed_theta,
               "max_differential": rep.max_differential}
        dump_json(out, cfg.json)
    return EXIT_OK if rep.passed else EXIT_FAILED


def cmd_pentagon_singular(args) -> int:
    r_minus, zero, r_plus = ls.singular_levels()
    print("singular levels: 0, (11-5*sqrt(5))/2, (11+5*sqrt(5))/2")
    for label, r in (("0", zero), ("(11-5*sqrt(5))/2", r_minus), ("(11+5*sqrt(5))/2", r_plus)):
        x, y, res = ls.singular_point(r)
        print(f"  r={label} = {format_scalar(r)}: singular point ({format_scalar(x)}, {format_scalar(y)}),"
              f" residual {res:.2e}")
    return EXIT_OK


def cmd_frieze(args) -> int:
    cfg = _config(args, default_exact=True)
    x, y = _scalar(args.x, cfg.exact), _scalar(args.y, cfg.exact)
    for row in frieze_rows(x, y):
        print("  ".join(format_scalar(v) for v in row))
    prod, total = monodromy_check(coefficients_from_moduli(x, y))
    print(f"prod a_i = {format_scalar(prod)}")
    print(f"sum a_i + 3 = {format_scalar(total)}")
    return EXIT_OK


def _orbit_rows(orbit: hx.HexagonOrbit, orbit_id: int) -> list:
    return [{"orbit": orbit_id, **r.as_row()} for r in orbit.records]


HEX_COLUMNS = ["orbit", "step", "x5", "y5", "x6", "y6", "A", "B", "C", "D", "quadric_residual", "d_residual"]


def cmd_hexagon_orbit(args) -> int:
    cfg = _config(args, default_exact=False)
    cfg.require_approx("random hexagon orbits")
    if args.coords:
        start = hx.HexagonModuli.parse(args.coords.split(","), exact=False)
        orbits = [hx.orbit_experiment(start, cfg.iters)]
        summary = None
    else:
        summary = hx.attractor_experiment(cfg.seed, args.starts, cfg.iters, workers=args.workers)
        orbits = summary.orbits
    rows = [row for k, o in enumerate(orbits) for row in _orbit_rows(o, k)]
    if summary is not None:
        print(f"{summary.converged}/{summary.starts} orbits reached residual < {summary.threshold:g}"
              f" within {summary.iters} steps")
        if summary.fraction < 0.9:
            print("warning: fewer than 90% of orbits approached the axis-aligned quadric", file=sys.stderr)
    else:
        o = orbits[0]
        last = o.records[-1]
        print(f"steps={len(o.records) - 1} final residual=({format_scalar(float(last.quadric_residual))},"
              f" {format_scalar(float(last.d_residual))})" + (f" stopped: {o.stopped}" if o.stopped else ""))
    if cfg.csv:
        write_csv(cfg.csv, HEX_COLUMNS, rows)
    if cfg.svg:
        ac = Panel("(A, C) projection", xlabel="A", ylabel="C")
        bc = Panel("(B, C) projection", xlabel="B", ylabel="C")
        ac.series.append(Series([(r["A"], r["C"]) for r in rows], "scatter", COLORS[1]))
        bc.series.append(Series([(r["B"], r["C"]) for r in rows], "scatter", COLORS[1]))
        for p in (ac, bc):
            xs = sorted(abs(float(s[0])) for s in p.series[0].points)
            ys = sorted(abs(float(s[1])) for s in p.series[0].points)
            lim = max(xs[int(0.95 * (len(xs) - 1))], ys[int(0.95 * (len(ys) - 1))], 1.0) * 1.2
            p.bounds = (-lim, lim, -lim, lim)
        emit_svg([ac, bc], cfg.svg)
    if cfg.json:
        out = {"config": cfg.as_dict()}
        if summary is not None:
            out["summary"] = summary.as_dict()
        else:
            out["orbit"] = rows
        dump_json(out, cfg.json)
    return EXIT_OK


def cmd_hexagon_f(args) -> int:
    cfg = _config(args, default_exact=True)
    a, b = _scalar(args.a, cfg.exact), _scalar(args.b, cfg.exact)
    h = hx.AxisAlignedHexagon(a, b)
    for k in range(args.iters + 1):
        print(f"{k}: (a, b) = ({format_scalar(h.a)}, {format_scalar(h.b)})")
        if k < args.iters:
            h = hx.renormalized_step(h, method="formula")
    return EXIT_OK


def cmd_hexagon_step(args) -> int:
    cfg = _config(args, default_exact=True)
    parts = args.coords.split(",")
    if len(parts) != 4:
        raise UsageError("--coords needs four comma-separated values x5,y5,x6,y6")
    m = hx.HexagonModuli(*(_scalar(p, cfg.exact) for p in parts))
    image = hx.hexagon_step(m)
    for label, v in (("P", m), ("T(P)", image)):
        A, B, C, D = hx.abcd(v)
        q, d = hx.axis_aligned_residual(v)
        print(f"{label}: (x5, y5, x6, y6) = ({', '.join(format_scalar(c) for c in v.as_tuple())})")
        print(f"  (A, B, C, D) = ({', '.join(format_scalar(c) for c in (A, B, C, D))}),"
              f" residual = ({format_scalar(q)}, {format_scalar(d)})")
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args, default_exact=True)
    rep = run_identity_suite(cfg.count, cfg.seed)
    for name, fails in rep.failures.items():
        print(f"{name}: {'pass' if not fails else f'FAIL ({len(fails)} points)'}")
    jac = run_jacobian_suite(min(cfg.count, 100), cfg.seed)
    jac_ok = all(r == 0 for _, _, r in jac)
    print(f"jacobian: {'pass' if jac_ok else 'FAIL'}")
    ok = rep.passed and jac_ok
    print(f"{'all exact identities passed' if ok else 'identity failures found'}"
          f" ({cfg.count} points, seed {cfg.seed}, {rep.seconds:.2f}s)")
    if cfg.json:
        dump_json({"config": cfg.as_dict(), "identities": rep.as_dict(), "jacobian_passed": jac_ok}, cfg.json)
    return EXIT_OK if ok else EXIT_FAILED


# -- parser ----------------------------------------------------------------------


def _add_mode(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", dest="exact", action="store_true", default=None, help="rational arithmetic")
    g.add_argument("--approx", dest="exact", action="store_false", help="floating-point arithmetic")


def _add_outputs(p, csv=False, svg=False):
    p.add_argument("--json", help="write a JSON report here")
    if csv:
        p.add_argument("--csv", help="write samples as CSV here")
    if svg:
        p.add_argument("--svg", help="write an SVG figure here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="projevolute", description="Projective evolutes of polygons.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolute", help="iterate T on a polygon")
    p.add_argument("--polygon", help='JSON file {"vertices": [[a, b, c], ...]}')
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--iters", type=int, default=1)
    _add_mode(p)
    _add_outputs(p, svg=True)
    p.set_defaults(func=cmd_evolute)

    pent = sub.add_parser("pentagon", help="pentagon moduli tools").add_subparsers(dest="pcommand", required=True)
    p = pent.add_parser("map", help="iterate the closed-form map")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--iters", type=int, default=4)
    _add_mode(p)
    _add_outputs(p)
    p.set_defaults(func=cmd_pentagon_map)

    p = pent.add_parser("levelset", help="sample level curves of I")
    p.add_argument("--r", type=float, action="append", required=True, help="level (repeatable)")
    p.add_argument("--samples", type=int, default=200, help="flow-time samples per component")
    p.add_argument("--ode-tol", type=float)
    _add_mode(p)
    _add_outputs(p, csv=True, svg=True)
    p.set_defaults(func=cmd_pentagon_levelset)

    p = pent.add_parser("conjugacy", help="check the -4 action of T^2 on an unbounded component")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--tol", type=float, help="pass threshold as a fraction of lambda")
    p.add_argument("--ode-tol", type=float)
    _add_mode(p)
    _add_outputs(p)
    p.set_defaults(func=cmd_pentagon_conjugacy)

    p = pent.add_parser("singular", help="singular levels and their singular points")
    p.set_defaults(func=cmd_pentagon_singular, exact=None)

    p = sub.add_parser("frieze", help="frieze rows and monodromy values")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    _add_mode(p)
    p.set_defaults(func=cmd_frieze)

    hexp = sub.add_parser("hexagon", help="hexagon tools").add_subparsers(dest="hcommand", required=True)
    p = hexp.add_parser("orbit", help="orbits in hexagon moduli")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=50)
    p.add_argument("--starts", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--coords", help="single start x5,y5,x6,y6 instead of random starts")
    _add_mode(p)
    _add_outputs(p, csv=True, svg=True)
    p.set_defaults(func=cmd_hexagon_orbit)

    p = hexp.add_parser("f", help="iterate (a, b) -> (f(a), f(b))")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--iters", type=int, default=5)
    _add_mode(p)
    p.set_defaults(func=cmd_hexagon_f)

    p = hexp.add_parser("step", help="one renormalized step of T in hexagon moduli")
    p.add_argument("--coords", required=True, help="x5,y5,x6,y6")
    _add_mode(p)
    p.set_defaults(func=cmd_hexagon_step)

    p = sub.add_parser("verify", help="exact identity suite")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int, default=7)
    _add_mode(p)
    _add_outputs(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if getattr(args, "iters", 0) is not None and getattr(args, "iters", 0) < 0:
        print("error: --iters must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, ValueError, EvoluteError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
