"""Batch command-line front end.

Every subcommand is pure file-in/file-out: a JSON problem description
plus flags in, CSV/JSON/SVG artifacts out.  Exit codes: 0 success,
1 configuration or input errors, 2 numeric escalation (coefficient
collapse on the double path with extended retry disabled).
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import _poly, asympt, lemniscate, measure, odecheck, rational, rootfind, svg, voronoi
from ._poly import DOUBLE, EXTENDED
from .errors import DegreeCollapse, VoroderivError


def _parse_complex(v):
    if isinstance(v, dict):
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    raise ValueError(f"cannot parse complex number from {v!r}")


def load_problem(path):
    """Pole-set problem JSON -> (PolarForm data, raw document)."""
    doc = json.loads(Path(path).read_text())
    poles, orders, coeffs = [], [], []
    for p in doc["poles"]:
        poles.append(_parse_complex(p))
        orders.append(int(p.get("order", 1)))
        cs = p.get("coeffs")
        if cs is None:
            cs = [{"re": 1.0, "im": 0.0}] * orders[-1]
        coeffs.append([_parse_complex(c) for c in cs])
    poly_part = [_parse_complex(c) for c in doc.get("polynomial_part", [0.0])]
    return (poles, orders, coeffs, poly_part), doc


def load_lemniscate_problem(path):
    doc = json.loads(Path(path).read_text())
    spec = doc["lemniscate"]
    polys = [[_parse_complex(c) for c in p] for p in spec["polynomials"]]
    mult = spec.get("multipliers")
    return lemniscate.LemniscateProblem(
        polynomials=tuple(polys),
        multipliers=tuple(int(m) for m in mult) if mult else None,
    )


def _form(args):
    (poles, orders, coeffs, poly_part), _ = load_problem(args.problem)
    return rational.polar_form(poles, orders, coeffs, poly_part,
                               precision=args.precision)


def _numerator_with_escalation(form, n, args):
    return _numerator_and_state(form, n, args)[0]


def _numerator_and_state(form, n, args):
    try:
        state = rational.derivative_state(form, n)
        return rational.numerator(state), state
    except DegreeCollapse:
        if args.precision == EXTENDED or args.no_extended_retry:
            raise
        ext = rational.polar_form(
            [_poly.to_complex(z) for z in form.poles], form.orders,
            [[_poly.to_complex(c) for c in cs] for cs in form.coeffs],
            [_poly.to_complex(c) for c in form.polynomial_part],
            precision=EXTENDED)
        state = rational.derivative_state(ext, n)
        return rational.numerator(state), state


def _solve_numerator(form, n, args):
    """Numerator roots for one derivative order.

    On the double path the solver runs from measure-quantile starts
    with the product-form evaluator, which stays accurate at high n
    where the expanded coefficients are too ill-scaled for Horner.
    """
    res, state = _numerator_and_state(form, n, args)
    base = state.base
    if (base.precision == DOUBLE and base.d >= 2
            and _poly.is_zero(base.polynomial_part, abs_floor=0.0)):
        diagram = voronoi.build([_poly.to_complex(z) for z in base.poles])
        return res, rootfind.solve(
            res.r_n, 1e-12,
            evaluator=rational.newton_evaluator(state),
            start=measure.skeleton_starts(diagram, res.degree))
    return res, rootfind.solve(res.r_n, 1e-12)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])


def _n_list(args):
    return [int(s) for s in str(args.n).split(",")]


def _window(args):
    cx, cy, h = (float(s) for s in args.window.split(","))
    return complex(cx, cy), h


def cmd_derive(args, out):
    form = _form(args)
    n = _n_list(args)[0]
    res = _numerator_with_escalation(form, n, args)
    rows = [(k, float(_poly.to_complex(c).real), float(_poly.to_complex(c).imag))
            for k, c in enumerate(res.r_n)]
    _write_csv(out / f"rn_{n}.csv", ["k", "re", "im"], rows)
    return 0


def cmd_roots(args, out):
    form = _form(args)
    n = _n_list(args)[0]
    res, rs = _solve_numerator(form, n, args)
    rows = [
        (float(_poly.to_complex(z).real), float(_poly.to_complex(z).imag),
         float(r), int(c))
        for z, r, c in zip(rs.roots, rs.residuals, rs.converged)
    ]
    _write_csv(out / f"roots_{n}.csv", ["re", "im", "residual", "converged"], rows)
    return 0


def cmd_voronoi(args, out):
    form = _form(args)
    diagram = voronoi.build([_poly.to_complex(z) for z in form.poles])
    (out / "voronoi.json").write_text(diagram.to_json() + "\n")
    return 0


def cmd_measure(args, out):
    form = _form(args)
    diagram = voronoi.build([_poly.to_complex(z) for z in form.poles])
    rows = [(e.pair[0], e.pair[1], float(e.t_lo), float(e.t_hi),
             measure.edge_mass(e, diagram.d)) for e in diagram.edges]
    _write_csv(out / "measure.csv", ["i", "j", "t_lo", "t_hi", "mass"], rows)
    k = args.grid
    cdf_rows = []
    for e in diagram.edges:
        em = measure.edge_measure(diagram, e)
        for q in range(k + 1):
            frac = q / k
            cdf_rows.append((e.pair[0], e.pair[1], frac,
                             em.quantile(frac * em.mass) if 0 < frac < 1
                             else (float(e.t_lo) if frac == 0 else float(e.t_hi)),
                             frac * em.mass))
    _write_csv(out / "measure_cdf.csv", ["i", "j", "u", "t", "cdf"], cdf_rows)
    return 0


def cmd_compare(args, out):
    form = _form(args)
    diagram = voronoi.build([_poly.to_complex(z) for z in form.poles])
    reports = []
    for n in _n_list(args):
        res, rs = _solve_numerator(form, n, args)
        emp = asympt.empirical(rs, n)
        rep = asympt.project_and_bin(emp, diagram)
        reports.append(json.loads(rep.to_json()))
        atoms = [(z.real, z.imag,
                  "" if pair is None else f"{pair[0]}-{pair[1]}", t, dist)
                 for z, pair, t, dist in rep.assignments]
        _write_csv(out / f"atoms_{n}.csv",
                   ["re", "im", "edge", "t", "distance"], atoms)
    (out / "compare.json").write_text(
        json.dumps(reports, sort_keys=True, indent=1) + "\n")
    return 0


def cmd_potential(args, out):
    form = _form(args)
    diagram = voronoi.build([_poly.to_complex(z) for z in form.poles])
    center, half = _window(args)
    rows = []
    for n in _n_list(args):
        res, rs = _solve_numerator(form, n, args)
        value = asympt.potential_l1(rs.converged_roots(), diagram,
                                    (center, half), grid=args.grid,
                                    seed=args.seed)
        rows.append((n, value))
    _write_csv(out / "potential_l1.csv", ["n", "l1_discrepancy"], rows)
    return 0


def cmd_odecheck(args, out):
    (poles, orders, coeffs, _), _ = load_problem(args.problem)
    s = orders[0]
    if any(r != s for r in orders):
        print("odecheck requires a common pole order", file=sys.stderr)
        return 1
    weights = [cs[-1] for cs in coeffs]
    f = odecheck.PowerSumFunction(s=s, poles=tuple(poles), weights=tuple(weights))
    rng = np.random.default_rng(args.seed)
    rows = []
    for n in _n_list(args):
        for _ in range(10):
            z = complex(rng.normal(), rng.normal()) * 2.0
            if min(abs(z - p) for p in poles) < 1e-3:
                continue
            r = odecheck.powersum_residual(f, n, z)
            rows.append((n, z.real, z.imag, abs(r)))
    _write_csv(out / "odecheck.csv", ["n", "z_re", "z_im", "residual"], rows)
    return 0


def cmd_lemniscate(args, out):
    problem = load_lemniscate_problem(args.problem)
    center, half = _window(args)
    report = lemniscate.compactness_and_compare(
        problem, _n_list(args), (center, half), grid=args.grid, seed=args.seed)
    doc = {
        "n_list": list(report.n_list),
        "max_root_modulus": list(report.max_root_modulus),
        "l1_discrepancy": list(report.l1_discrepancy),
        "dominance_radius": None if not report.compact else report.dominance_radius,
        "compact": report.compact,
    }
    (out / "lemniscate.json").write_text(
        json.dumps(doc, sort_keys=True, indent=1) + "\n")
    n_last = report.n_list[-1]
    svg.render_svg(out / f"lemniscate_{n_last}.svg", None,
                   roots=report.roots[-1], window=(center, half))
    rows = [(n, z.real, z.imag) for n, roots in zip(report.n_list, report.roots)
            for z in roots]
    _write_csv(out / "lemniscate_roots.csv", ["n", "re", "im"], rows)
    return 0


def cmd_render(args, out):
    form = _form(args)
    diagram = voronoi.build([_poly.to_complex(z) for z in form.poles])
    n = _n_list(args)[0]
    res, rs = _solve_numerator(form, n, args)
    center, half = _window(args)
    svg.render_svg(out / f"render_{n}.svg", diagram,
                   roots=[_poly.to_complex(z) for z in rs.roots],
                   window=(center, half))
    return 0


COMMANDS = {
    "derive": cmd_derive,
    "roots": cmd_roots,
    "voronoi": cmd_voronoi,
    "measure": cmd_measure,
    "compare": cmd_compare,
    "potential": cmd_potential,
    "odecheck": cmd_odecheck,
    "lemniscate": cmd_lemniscate,
    "render": cmd_render,
}


def build_parser():
    ap = argparse.ArgumentParser(
        prog="voroderiv",
        description="derivative zero asymptotics on Voronoi diagrams",
    )
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--problem", required=True, help="problem JSON path")
    ap.add_argument("--n", default="1", help="derivative order or comma list")
    ap.add_argument("--window", default="0,0,3", help="cx,cy,half_side")
    ap.add_argument("--grid", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--precision", choices=[DOUBLE, EXTENDED], default=DOUBLE)
    ap.add_argument("--out", default=".", help="output directory")
    ap.add_argument("--no-extended-retry", action="store_true",
                    help="fail instead of retrying collapses in extended precision")
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        print(f"cannot create output directory: {exc}", file=sys.stderr)
        return 1
    if args.grid < 16:
        print("grid resolution must be >= 16", file=sys.stderr)
        return 1
    try:
        return COMMANDS[args.command](args, out)
    except DegreeCollapse as exc:
        print(f"numeric escalation: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except VoroderivError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
