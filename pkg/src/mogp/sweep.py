"""Weight sweeps, ideal points and non-dominance filtering."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from mogp.dual import build_dual
from mogp.errors import DomainError, GPError
from mogp.model import MultiObjectiveProgram
from mogp.recovery import PrimalSolution, VerificationReport, recover_primal, verify
from mogp.scalarize import PreferenceWeights, ScalarizedProgram, scalarize, single_objective
from mogp.solver import DualSolution, SolverOptions, solve_dual

DOMINANCE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ParetoPoint:
    weights: PreferenceWeights
    dual: DualSolution | None = None
    x: PrimalSolution | None = None
    objective_vector: np.ndarray | None = None
    Z: float | None = None
    report: VerificationReport | None = None
    error: GPError | None = None
    scalarized: ScalarizedProgram | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class IdealValue:
    value: float | None
    x: np.ndarray | None
    unique: bool
    error: GPError | None = None


@dataclass(frozen=True, eq=False)
class SweepReport:
    program: MultiObjectiveProgram
    points: list[ParetoPoint]
    nondominated: list[bool]
    ideal: list[IdealValue] | None = None

    @property
    def all_solved(self) -> bool:
        return all(pt.ok for pt in self.points)


def solve_point(prog: MultiObjectiveProgram, w, opts: SolverOptions | None = None) -> ParetoPoint:
    """scalarize -> dual -> solve -> recover -> verify, raising on failure."""
    opts = opts or SolverOptions()
    sp = scalarize(prog, w)
    dual = solve_dual(build_dual(sp), opts)
    x = recover_primal(dual, sp)
    report = verify(x, dual, sp)
    return ParetoPoint(sp.weights, dual, x, x.objective_values, x.Z, report, None, sp)


def _safe_point(prog, w, opts):
    try:
        return solve_point(prog, w, opts)
    except GPError as exc:
        if not isinstance(w, PreferenceWeights):
            w = PreferenceWeights(tuple(w))
        return ParetoPoint(w, error=exc)


def dominance_filter(points: Sequence[Sequence[float]], tol: float = DOMINANCE_TOL) -> list[bool]:
    """``True`` for every vector not dominated by another (minimization)."""
    if len(points) == 0:
        return []
    lengths = {len(v) for v in points}
    if len(lengths) != 1:
        raise DomainError("objective vectors have different lengths")
    V = np.asarray(points, dtype=float)
    flags = []
    for v in V:
        no_worse = np.all(V <= v + tol, axis=1)
        better = np.any(V < v - tol, axis=1)
        flags.append(not np.any(no_worse & better))
    return flags


def sweep(
    prog: MultiObjectiveProgram,
    grid: Sequence,
    opts: SolverOptions | None = None,
    parallel: int = 1,
    with_ideal: bool = False,
) -> SweepReport:
    if len(grid) == 0:
        raise DomainError("weight grid is empty")
    opts = opts or SolverOptions()
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            points = list(pool.map(lambda w: _safe_point(prog, w, opts), grid))
    else:
        points = [_safe_point(prog, w, opts) for w in grid]

    solved = [i for i, pt in enumerate(points) if pt.ok]
    flags = [False] * len(points)
    for i, f in zip(solved, dominance_filter([points[i].objective_vector for i in solved])):
        flags[i] = f
    ideal = ideal_points(prog, opts) if with_ideal else None
    return SweepReport(prog, points, flags, ideal)


def ideal_points(prog: MultiObjectiveProgram, opts: SolverOptions | None = None) -> list[IdealValue]:
    """Optimum of each objective on its own, over the shared constraints."""
    opts = opts or SolverOptions()
    out = []
    for k in range(prog.p):
        sp = single_objective(prog, k)
        try:
            dual = solve_dual(build_dual(sp), opts)
            x = recover_primal(dual, sp)
        except GPError as exc:
            out.append(IdealValue(None, None, False, exc))
            continue
        out.append(IdealValue(float(x.objective_values[0]), x.x, x.unique))
    return out
