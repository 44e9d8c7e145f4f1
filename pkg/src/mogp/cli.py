"""Command-line driver.

Exit codes: 0 success, 1 parse/usage error, 2 solver error, 3 some sweep
points failed, 4 infeasible point (``check``).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from mogp import io as gpio
from mogp.errors import DomainError, GPError, NotConvertible, ParseError
from mogp.model import degree_of_difficulty, evaluate_posynomial
from mogp.scalarize import PreferenceWeights, scalarize, weight_grid
from mogp.solver import OPTIMAL, SolverOptions
from mogp.sweep import ideal_points, sweep

EXIT_OK, EXIT_USAGE, EXIT_SOLVER, EXIT_SWEEP_FAILED, EXIT_INFEASIBLE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _floats(text: str, what: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"--{what}: expected comma-separated numbers, got {text!r}") from None


def _weights(text: str, p: int) -> PreferenceWeights:
    w = _floats(text, "weights")
    if len(w) != p:
        raise UsageError(f"--weights: {len(w)} values given for {p} objectives")
    total = sum(w)
    # tolerate decimal input like 0.1,0.2,0.7 whose float sum is off by an ulp
    if abs(total - 1.0) > 1e-9:
        raise UsageError(f"--weights must sum to 1 (sum is {total:g})")
    w = tuple(v / total for v in w)
    try:
        return PreferenceWeights(w[:-1] + (1.0 - sum(w[:-1]),))
    except DomainError as exc:
        raise UsageError(f"--weights: {exc}") from None


def _options(args) -> SolverOptions:
    return SolverOptions(
        max_iterations=args.max_iterations,
        gradient_tolerance=args.gradient_tolerance,
        equality_tolerance=args.equality_tolerance,
        active_threshold=args.active_threshold,
    )


def _dump_json(doc, target):
    text = json.dumps(doc, indent=2)
    if target in (None, "-"):
        print(text)
    else:
        Path(target).write_text(text + "\n")


def cmd_analyze(args, prog) -> int:
    counts = [len(g) for g in prog.objectives]
    sp = scalarize(prog, weight_grid(prog.p, 1.0 / prog.p)[0] if prog.p > 1 else (1.0,))
    print(f"objectives (p): {prog.p}")
    print(f"constraints (m): {prog.m}")
    print(f"variables (n): {prog.n}  [{', '.join(prog.variables.names)}]")
    print(f"objective terms: {', '.join(map(str, counts))}")
    print(f"constraint terms: {', '.join(str(len(g)) for g in prog.constraints) or '-'}")
    print(f"degree of difficulty (scalarized): {degree_of_difficulty(sp)}")
    return EXIT_OK


def cmd_solve(args, prog) -> int:
    w = _weights(args.weights, prog.p)
    opts = _options(args)
    report = sweep(prog, [w], opts)
    pt = report.points[0]
    _dump_json(gpio.report_document(report, opts), args.json)
    if not pt.ok:
        print(gpio.describe_error(pt.error), file=sys.stderr)
        return EXIT_SOLVER
    if pt.dual.status != OPTIMAL:
        print(f"solver stopped with status {pt.dual.status}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def cmd_sweep(args, prog) -> int:
    try:
        grid = weight_grid(prog.p, args.step)
    except DomainError as exc:
        raise UsageError(f"--step: {exc}") from None
    if args.max_weight is not None:
        grid = [w for w in grid if w[0] <= args.max_weight + 1e-12]
    if not grid:
        raise UsageError("weight grid is empty after filtering")
    opts = _options(args)
    report = sweep(prog, grid, opts, parallel=args.parallel, with_ideal=args.ideal)
    dual_csv = gpio.table_csv(*gpio.dual_table(report))
    primal_csv = gpio.table_csv(*gpio.primal_table(report))
    if args.csv:
        base = Path(args.csv)
        stem = base.with_suffix("")
        Path(f"{stem}.dual.csv").write_text(dual_csv)
        Path(f"{stem}.primal.csv").write_text(primal_csv)
    if args.json is not None:
        _dump_json(gpio.report_document(report, opts), args.json)
    if args.json != "-":
        print("# dual solution")
        print(dual_csv, end="")
        print()
        print("# primal solution")
        print(primal_csv, end="")
    failed = [pt for pt in report.points if not pt.ok]
    for pt in failed:
        print(f"w={pt.weights.w}: {gpio.describe_error(pt.error)}", file=sys.stderr)
    return EXIT_OK if not failed else EXIT_SWEEP_FAILED


def cmd_ideal(args, prog) -> int:
    status = EXIT_OK
    for k, iv in enumerate(ideal_points(prog, _options(args))):
        if iv.error is not None:
            print(f"f{k + 1}: no ideal value ({gpio.describe_error(iv.error)})")
            status = EXIT_SOLVER
            continue
        x = ", ".join(gpio.fmt(v) for v in iv.x)
        note = "" if iv.unique else "  (witness not unique)"
        print(f"f{k + 1} = {gpio.fmt(iv.value)}  x = ({x}){note}")
    return status


def cmd_check(args, prog) -> int:
    w = _weights(args.weights, prog.p)
    x = np.array(_floats(args.x, "x"))
    if len(x) != prog.n:
        raise UsageError(f"--x: {len(x)} values given for {prog.n} variables")
    if np.any(x <= 0):
        raise UsageError("--x: all coordinates must be positive")
    sp = scalarize(prog, w)
    g = [evaluate_posynomial(c, x) for c in prog.constraints]
    feasible = all(v <= 1.0 + args.tolerance for v in g)
    for i, v in enumerate(g):
        mark = "ok" if v <= 1.0 + args.tolerance else "VIOLATED"
        print(f"g{i + 1}(x) = {gpio.fmt(v)}  (<= 1: {mark})")
    for k, v in enumerate(prog.objective_values(x)):
        print(f"f{k + 1}(x) = {gpio.fmt(v)}")
    print(f"Z = {gpio.fmt(evaluate_posynomial(sp.objective, x))}")
    print("feasible" if feasible else "infeasible")
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file (YAML/JSON) or bundled example name")
    common.add_argument("--max-iterations", type=int, default=200)
    common.add_argument("--gradient-tolerance", type=float, default=1e-9)
    common.add_argument("--equality-tolerance", type=float, default=1e-10)
    common.add_argument("--active-threshold", type=float, default=1e-7)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mogp", description="Multi-objective posynomial geometric programming")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("analyze", parents=[common], help="structural summary")

    p = sub.add_parser("solve", parents=[common], help="solve one weighted program")
    p.add_argument("--weights", required=True)
    p.add_argument("--json", default=None, help="write the report to this file instead of stdout")

    p = sub.add_parser("sweep", parents=[common], help="solve over a weight grid")
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--max-weight", type=float, default=None, help="keep grid points with w1 <= this")
    p.add_argument("--csv", default=None, help="writes <stem>.dual.csv and <stem>.primal.csv")
    p.add_argument("--json", nargs="?", const="-", default=None, help="JSON report (stdout if no path)")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--ideal", action="store_true", help="include ideal values in the JSON report")

    sub.add_parser("ideal", parents=[common], help="per-objective ideal values")

    p = sub.add_parser("check", parents=[common], help="evaluate a given point")
    p.add_argument("--weights", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--tolerance", type=float, default=1e-9)
    return parser


COMMANDS = {
    "analyze": cmd_analyze,
    "solve": cmd_solve,
    "sweep": cmd_sweep,
    "ideal": cmd_ideal,
    "check": cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        prog = gpio.load_program(args.problem)
        return COMMANDS[args.command](args, prog)
    except (ParseError, NotConvertible, DomainError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GPError as exc:
        print(f"error: {gpio.describe_error(exc)}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
