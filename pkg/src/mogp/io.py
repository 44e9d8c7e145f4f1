"""Problem documents, report documents and CSV tables.

A problem document is YAML (JSON is accepted too)::

    variables: [x1, x2]
    objectives:
      - sense: min            # or max (single-term objectives only)
        terms:
          - {coef: 1, exps: {x1: 1}}
          - {coef: 1, exps: {x1: -1}}
    constraints:
      - bound: 6
        terms:
          - {coef: 1, exps: {x1: 1, x2: 1}}

Exponents that are zero may be omitted.
"""
from __future__ import annotations

import csv
import io
import math
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from mogp.dual import build_dual
from mogp.errors import DomainError, GPError, ParseError
from mogp.model import (
    Monomial,
    MultiObjectiveProgram,
    Posynomial,
    RawConstraint,
    RawObjective,
    VariableSpace,
    degree_of_difficulty,
    to_standard_form,
)
from mogp.scalarize import scalarize

TOP_KEYS = {"variables", "objectives", "constraints"}
SENSES = {"min": "minimize", "minimize": "minimize", "max": "maximize", "maximize": "maximize"}
BUILTIN = ("example1", "example2", "example2-verbatim")


def _number(value, where):
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            pass
    raise ParseError(f"{where}: expected a number, got {value!r}")


def _check_keys(obj, allowed, where, required=()):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a mapping, got {type(obj).__name__}")
    unknown = set(obj) - set(allowed)
    if unknown:
        raise ParseError(f"{where}: unknown key(s) {sorted(map(str, unknown))}")
    for key in required:
        if key not in obj:
            raise ParseError(f"{where}: missing required key {key!r}")


def _parse_posynomial(terms, variables: VariableSpace, where) -> Posynomial:
    if not isinstance(terms, list) or not terms:
        raise ParseError(f"{where}.terms: expected a non-empty list of terms")
    monos = []
    for t, term in enumerate(terms):
        tw = f"{where}.terms[{t}]"
        _check_keys(term, {"coef", "exps"}, tw, required=("coef",))
        coef = _number(term["coef"], f"{tw}.coef")
        if not coef > 0:
            raise ParseError(f"{tw}.coef: posynomial coefficient must be positive, got {coef:g}")
        exps = np.zeros(variables.n)
        raw = term.get("exps") or {}
        if not isinstance(raw, dict):
            raise ParseError(f"{tw}.exps: expected a mapping variable -> exponent")
        for name, val in raw.items():
            if str(name) not in variables.names:
                raise ParseError(f"{tw}.exps: unknown variable {name!r}")
            exps[variables.index(str(name))] = _number(val, f"{tw}.exps.{name}")
        monos.append(Monomial(coef, tuple(exps)))
    return Posynomial(tuple(monos))


def parse_problem(text: str):
    """Parse a problem document into ``(objectives, constraints, variables)``."""
    try:
        doc = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        line = mark.line + 1 if mark else None
        col = mark.column + 1 if mark else None
        raise ParseError(f"syntax error: {exc.problem or exc}", line, col) from None
    except yaml.YAMLError as exc:
        raise ParseError(f"syntax error: {exc}") from None
    _check_keys(doc, TOP_KEYS, "document", required=("variables", "objectives"))

    names = doc["variables"]
    if not isinstance(names, list):
        raise ParseError("variables: expected a list of names")
    try:
        variables = VariableSpace(tuple(str(v) for v in names))
    except DomainError as exc:
        raise ParseError(f"variables: {exc}") from None

    objs = doc["objectives"]
    if not isinstance(objs, list) or not objs:
        raise ParseError("objectives: expected a non-empty list")
    objectives = []
    for k, obj in enumerate(objs):
        where = f"objectives[{k}]"
        _check_keys(obj, {"sense", "terms"}, where, required=("terms",))
        sense = SENSES.get(str(obj.get("sense", "min")).lower())
        if sense is None:
            raise ParseError(f"{where}.sense: expected 'min' or 'max', got {obj.get('sense')!r}")
        objectives.append(RawObjective(_parse_posynomial(obj["terms"], variables, where), sense))

    cons = doc.get("constraints") or []
    if not isinstance(cons, list):
        raise ParseError("constraints: expected a list")
    constraints = []
    for i, con in enumerate(cons):
        where = f"constraints[{i}]"
        _check_keys(con, {"terms", "bound"}, where, required=("terms",))
        bound = _number(con.get("bound", 1.0), f"{where}.bound")
        if not bound > 0:
            raise ParseError(f"{where}.bound: bound must be positive, got {bound:g}")
        constraints.append(RawConstraint(_parse_posynomial(con["terms"], variables, where), bound))
    return objectives, constraints, variables


def _clean(v: float):
    return int(v) if float(v).is_integer() else float(v)


def _terms_doc(g: Posynomial, variables: VariableSpace):
    out = []
    for mono in g.terms:
        exps = {name: _clean(a) for name, a in zip(variables.names, mono.exponents) if a != 0}
        out.append({"coef": _clean(mono.coefficient), "exps": exps})
    return out


def serialize_problem(objectives, constraints, variables: VariableSpace) -> str:
    doc = {
        "variables": list(variables.names),
        "objectives": [
            {"sense": "max" if o.sense == "maximize" else "min", "terms": _terms_doc(o.posynomial, variables)}
            for o in objectives
        ],
        "constraints": [
            {"bound": _clean(c.bound), "terms": _terms_doc(c.posynomial, variables)} for c in constraints
        ],
    }
    return yaml.safe_dump(doc, sort_keys=False, default_flow_style=None)


def read_problem_text(source: str) -> str:
    """Contents of a problem file, or of a bundled example given by name."""
    path = Path(source)
    if path.exists():
        return path.read_text()
    name = source[:-5] if source.endswith(".yaml") else source
    if name in BUILTIN:
        return resources.files("mogp.fixtures").joinpath(f"{name}.yaml").read_text()
    raise ParseError(f"no such problem file or bundled example: {source!r} (bundled: {', '.join(BUILTIN)})")


def load_program(source: str) -> MultiObjectiveProgram:
    objectives, constraints, variables = parse_problem(read_problem_text(source))
    return to_standard_form(objectives, constraints, variables)


# --- reports -------------------------------------------------------------

def fmt(v) -> str:
    if v is None or (isinstance(v, float) and math.isnan(v)):
        return ""
    return f"{float(v):.7g}"


def _finite(v):
    v = float(v)
    return v if math.isfinite(v) else None


def dual_table(report):
    prog = report.program
    labels = list(build_dual(scalarize(prog, report.points[0].weights)).labels)
    header = [f"w{k + 1}" for k in range(prog.p)] + labels + ["V"]
    rows = []
    for pt in report.points:
        row = list(pt.weights.w)
        if pt.ok:
            row += list(pt.dual.delta) + [pt.dual.value]
        else:
            row += [None] * (len(labels) + 1)
        rows.append(row)
    return header, rows


def primal_table(report):
    prog = report.program
    header = [f"w{k + 1}" for k in range(prog.p)] + [f"x{j + 1}" for j in range(prog.n)] + ["Z"]
    rows = []
    for pt in report.points:
        row = list(pt.weights.w)
        if pt.ok:
            row += list(pt.x.x) + [pt.Z]
        else:
            row += [None] * (prog.n + 1)
        rows.append(row)
    return header, rows


def table_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def point_document(pt, nondominated=None) -> dict:
    doc = {"weights": list(pt.weights.w)}
    if not pt.ok:
        doc.update(status="error", error_type=type(pt.error).__name__, error=str(pt.error))
        return doc
    dual = pt.dual
    dp = dual.point.dual
    doc.update(
        status=dual.status,
        dual={lab: float(d) for lab, d in zip(dp.labels, dual.delta)},
        V=float(dual.value),
        iterations=dual.iterations,
        reduced_gradient_norm=_finite(dual.reduced_gradient_norm),
        x={name: float(v) for name, v in zip(pt.scalarized.program.variables.names, pt.x.x)},
        objective_values=[float(v) for v in pt.objective_vector],
        Z=float(pt.Z),
        unique=pt.x.unique,
        verification={
            "max_constraint_violation": float(pt.report.max_constraint_violation),
            "duality_gap": float(pt.report.duality_gap),
            "recovery_residual": float(pt.report.recovery_residual),
            "active_constraints": sorted(i + 1 for i in pt.report.active_constraints),
        },
    )
    doc["lambda"] = [float(v) for v in dual.lam]
    if nondominated is not None:
        doc["nondominated"] = bool(nondominated)
    return doc


def ideal_document(ideal) -> list:
    out = []
    for k, iv in enumerate(ideal):
        if iv.error is not None:
            out.append({"objective": k + 1, "status": "error", "error_type": type(iv.error).__name__,
                        "error": str(iv.error)})
        else:
            out.append({"objective": k + 1, "value": iv.value, "x": [float(v) for v in iv.x],
                        "unique": iv.unique})
    return out


def report_document(report, opts) -> dict:
    prog = report.program
    dh, drows = dual_table(report)
    ph, prows = primal_table(report)
    doc = {
        "problem": {
            "variables": list(prog.variables.names),
            "p": prog.p,
            "m": prog.m,
            "n": prog.n,
            "degree_of_difficulty": degree_of_difficulty(prog),
        },
        "solver": {
            "max_iterations": opts.max_iterations,
            "gradient_tolerance": opts.gradient_tolerance,
            "equality_tolerance": opts.equality_tolerance,
            "active_threshold": opts.active_threshold,
        },
        "points": [point_document(pt, nd) for pt, nd in zip(report.points, report.nondominated)],
        "tables": {
            "dual": {"columns": dh, "rows": [[fmt(v) for v in r] for r in drows]},
            "primal": {"columns": ph, "rows": [[fmt(v) for v in r] for r in prows]},
        },
    }
    if report.ideal is not None:
        doc["ideal"] = ideal_document(report.ideal)
    return doc


def describe_error(exc: GPError) -> str:
    return f"{type(exc).__name__}: {exc}"
