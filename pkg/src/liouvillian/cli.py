"""Command-line interface.

Exit codes:

====  ==========================================================
0     success (Liouvillian solution found, or no obstruction)
2     input error (syntax, non-rational poles, degenerate input)
10    Case 4 / NonIntegrable
11    Degenerate (c^2 = 4b)
12    SurdFrequency (omega2^2 irrational)
13    RhoCollapse during simulation
====  ==========================================================
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .algebrization import HamiltonianChange, algebrize
from .errors import (
    DegenerateParameters,
    LiouvillianError,
    RhoCollapse,
    SurdFrequency,
)
from .kovacic import kovacic
from .ode import classify_singularities, to_normal_form
from .parser import parse_ratfun, parse_rational
from .report import error_record, kovacic_record, render_text, to_jsonable, wilberforce_record
from .wilberforce import STATE_FIELDS, DimensionlessParams, analyze_integrability, hamiltonian_energy, sweep

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CASE4 = 10
EXIT_DEGENERATE = 11
EXIT_SURD = 12
EXIT_COLLAPSE = 13

CSV_COLUMNS = ("t", "rho", "theta", "phi", "P_rho", "P_theta", "P_phi", "H")


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _emit(rec: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(rec, indent=2))
    else:
        print(render_text(rec))


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except LiouvillianError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# -- kovacic -------------------------------------------------------------------


def cmd_kovacic(args) -> int:
    t0 = time.perf_counter()
    try:
        r = parse_ratfun(args.r)
        verdict = kovacic(r)
    except (LiouvillianError, ZeroDivisionError) as exc:
        _emit(error_record(type(exc).__name__, str(exc), time.perf_counter() - t0), args.json)
        return EXIT_INPUT
    _emit(kovacic_record(verdict, r, time.perf_counter() - t0), args.json)
    return EXIT_OK if verdict.liouvillian else EXIT_CASE4


# -- algebrize -----------------------------------------------------------------


def cmd_algebrize(args) -> int:
    t0 = time.perf_counter()
    try:
        a_hat = parse_ratfun(args.a_hat)
        b_hat = parse_ratfun(args.b_hat)
        if args.change == "custom":
            if not args.alpha:
                raise DegenerateParameters("--alpha is required with --change custom")
            change = HamiltonianChange(parse_ratfun(args.alpha))
        else:
            change = getattr(HamiltonianChange, args.change)(args.param)
        ode = algebrize(a_hat, b_hat, change)
        normal, _ = to_normal_form(ode)
        sing = classify_singularities(ode)
    except (LiouvillianError, ZeroDivisionError, ValueError) as exc:
        _emit(error_record(type(exc).__name__, str(exc), time.perf_counter() - t0), args.json)
        return EXIT_INPUT
    rec = {
        "verdict": "Algebrized",
        "case": None,
        "alpha": change.alpha.to_string(),
        "A": ode.a.to_string(),
        "B": ode.b.to_string(),
        "r": normal.r.to_string(),
        "singularities": {str(to_jsonable(p)): k.value for p, k in sing.points},
        "trace": [],
        "timing": time.perf_counter() - t0,
    }
    if args.json:
        print(json.dumps(rec, indent=2))
    else:
        for key in ("alpha", "A", "B", "r", "singularities"):
            print(f"{key}: {rec[key]}")
    return EXIT_OK


# -- wilberforce ---------------------------------------------------------------


_CONCLUSION_EXIT = {"NonIntegrable": EXIT_CASE4, "Degenerate": EXIT_DEGENERATE, "NoObstruction": EXIT_OK}


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    try:
        rep = analyze_integrability(args.b, args.c, args.f, args.B)
    except SurdFrequency as exc:
        _emit(error_record("SurdFrequency", str(exc), time.perf_counter() - t0), args.json)
        return EXIT_SURD
    except LiouvillianError as exc:
        _emit(error_record(type(exc).__name__, str(exc), time.perf_counter() - t0), args.json)
        return EXIT_INPUT
    _emit(wilberforce_record(rep, time.perf_counter() - t0), args.json)
    return _CONCLUSION_EXIT[rep.conclusion]


def _parse_section(text: str) -> tuple[str, float]:
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or name not in STATE_FIELDS + ("P_rho", "P_theta", "P_phi"):
        raise argparse.ArgumentTypeError(f"section must look like coord=value with coord in {CSV_COLUMNS[1:7]}")
    return name, float(value)


def cmd_simulate(args) -> int:
    from .numeric import poincare_section, simulate

    d = DimensionlessParams(b=args.b, c=args.c, f=args.f, a=args.a)
    try:
        traj = simulate(d, args.state, args.t_end, args.dt)
    except RhoCollapse as exc:
        print(f"RhoCollapse: {exc}", file=sys.stderr)
        return EXIT_COLLAPSE
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = open(args.out, "w", newline="") if args.out != "-" else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(CSV_COLUMNS)
        for t, s, h in zip(traj.times, traj.states, traj.energy):
            w.writerow([_fmt(t), *map(_fmt, s), _fmt(h)])
    finally:
        if out is not sys.stdout:
            out.close()
    if args.section:
        coord, value = args.section
        points = poincare_section(traj, coord, value, args.direction)
        path = args.section_out or (str(Path(args.out).with_suffix("")) + ".section.csv" if args.out != "-" else "section.csv")
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS + ("direction",))
            for p in points:
                w.writerow([_fmt(p.t), *map(_fmt, p.state), _fmt(hamiltonian_energy(p.state, d)), p.direction])
        print(f"{len(points)} section points -> {path}", file=sys.stderr)
    print(f"relative energy drift: {traj.energy_drift():.3e}", file=sys.stderr)
    return EXIT_OK


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def cmd_sweep(args) -> int:
    rows = list(itertools.product(args.b, args.c, args.f, args.B))
    t0 = time.perf_counter()
    results = sweep(rows, jobs=args.jobs)
    w = csv.writer(sys.stdout)
    w.writerow(("b", "c", "f", "B", "verdict", "case", "omega2_sq"))
    failed = False
    for row, res in zip(rows, results):
        if isinstance(res, Exception):
            verdict, case, w2 = type(res).__name__, "", ""
            failed = True
        else:
            verdict = res.conclusion
            case = res.verdict.tag if res.verdict else ""
            w2 = to_jsonable(res.modes.omega2_sq)
        w.writerow([*(str(v) for v in row), verdict, case, w2])
    print(f"{len(rows)} rows in {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return EXIT_INPUT if failed else EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liouvillian", description="Kovacic analysis and the Wilberforce pipeline")
    sub = p.add_subparsers(dest="command", required=True)

    k = sub.add_parser("kovacic", help="run Kovacic's algorithm on xi'' = r xi")
    k.add_argument("--r", required=True, help='rational function of x, e.g. "2/x^2"')
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_kovacic)

    a = sub.add_parser("algebrize", help="rational form of y'' + a_hat y' + b_hat y = 0 under a change z(t)")
    a.add_argument("--a-hat", default="0", help="drift coefficient as a function of z (written x)")
    a.add_argument("--b-hat", required=True)
    a.add_argument("--change", choices=("cosine", "sine", "exponential", "custom"), default="cosine")
    a.add_argument("--param", type=_rational, default=Fraction(1), help="omega^2 or mu^2 as p/q")
    a.add_argument("--alpha", help="alpha(z) for --change custom")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_algebrize)

    w = sub.add_parser("wilberforce", help="Wilberforce spring-pendulum")
    wsub = w.add_subparsers(dest="wcommand", required=True)

    an = wsub.add_parser("analyze", help="non-integrability pipeline")
    for name in ("b", "c", "f", "B"):
        an.add_argument(f"--{name}", type=_rational, required=True)
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=cmd_analyze)

    sim = wsub.add_parser("simulate", help="RK4 integration to CSV")
    sim.add_argument("--b", type=float, default=1.0)
    sim.add_argument("--c", type=float, default=1.0)
    sim.add_argument("--f", type=float, default=0.5)
    sim.add_argument("--a", type=float, default=1.0, help="dimensionless moment of inertia")
    sim.add_argument("--state", type=float, nargs=6, metavar=("RHO", "THETA", "PHI", "P_RHO", "P_THETA", "P_PHI"),
                     default=[1.1, 0.3, 0.2, 0.0, 0.0, 0.0])
    sim.add_argument("--t-end", type=float, default=100.0)
    sim.add_argument("--dt", type=float, default=1e-3)
    sim.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    sim.add_argument("--section", type=_parse_section, help="coord=value, e.g. theta=0")
    sim.add_argument("--direction", type=int, choices=(-1, 0, 1), default=1)
    sim.add_argument("--section-out", help="section CSV path (default: <out>.section.csv)")
    sim.set_defaults(func=cmd_simulate)

    sw = wsub.add_parser("sweep", help="grid of analyses, rows in input order")
    sw.add_argument("--b", type=_rational_list, required=True, help="comma-separated rationals")
    sw.add_argument("--c", type=_rational_list, default=[Fraction(0)])
    sw.add_argument("--f", type=_rational_list, required=True)
    sw.add_argument("--B", type=_rational_list, default=[Fraction(1)])
    sw.add_argument("--jobs", type=int, default=1)
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
