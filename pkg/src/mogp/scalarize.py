"""Weighted-sum scalarization and simplex weight grids."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from mogp.errors import DomainError
from mogp.model import MultiObjectiveProgram, Posynomial

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class PreferenceWeights:
    w: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(v) for v in np.atleast_1d(self.w))
        object.__setattr__(self, "w", w)
        if not w:
            raise DomainError("empty weight vector")
        if any(not np.isfinite(v) or v <= 0 for v in w):
            raise DomainError(f"preference weights must be strictly positive, got {w}")
        if abs(sum(w) - 1.0) > WEIGHT_SUM_TOL:
            raise DomainError(f"preference weights must sum to 1, got sum {sum(w)!r}")

    def __len__(self):
        return len(self.w)

    def __iter__(self):
        return iter(self.w)

    def __getitem__(self, k):
        return self.w[k]

    def as_array(self) -> np.ndarray:
        return np.array(self.w)


@dataclass(frozen=True)
class TermSource:
    objective: int  # 0-based k
    term: int  # 0-based t within objective k
    coefficient: float  # original C_k0t


@dataclass(frozen=True)
class ScalarizedProgram:
    program: MultiObjectiveProgram  # single objective
    provenance: tuple[TermSource, ...]
    weights: PreferenceWeights
    source: MultiObjectiveProgram

    @property
    def objective(self) -> Posynomial:
        return self.program.objectives[0]

    @property
    def constraints(self):
        return self.program.constraints

    @property
    def n(self):
        return self.program.n


def scalarize(prog: MultiObjectiveProgram, w) -> ScalarizedProgram:
    if not isinstance(w, PreferenceWeights):
        w = PreferenceWeights(tuple(w))
    if len(w) != prog.p:
        raise DomainError(f"{len(w)} weights given for {prog.p} objectives")
    terms, prov = [], []
    for k, (wk, g) in enumerate(zip(w, prog.objectives)):
        for t, mono in enumerate(g.terms):
            terms.append(mono.scaled(wk))
            prov.append(TermSource(k, t, mono.coefficient))
    single = MultiObjectiveProgram(prog.variables, (Posynomial(tuple(terms)),), prog.constraints)
    return ScalarizedProgram(single, tuple(prov), w, prog)


def single_objective(prog: MultiObjectiveProgram, k: int) -> ScalarizedProgram:
    """Program with objective ``k`` alone, weight 1."""
    sub = MultiObjectiveProgram(prog.variables, (prog.objectives[k],), prog.constraints)
    return scalarize(sub, PreferenceWeights((1.0,)))


def weight_grid(p: int, step: float) -> list[PreferenceWeights]:
    """Interior lattice points of the probability simplex with spacing ``step``,
    in lexicographic order."""
    if p < 1:
        raise DomainError("p must be at least 1")
    if not 0 < step < 1:
        if p == 1 and step == 1:
            return [PreferenceWeights((1.0,))]
        raise DomainError(f"step must lie in (0, 1), got {step}")
    divisions = round(1.0 / step)
    if abs(divisions * step - 1.0) > 1e-9:
        raise DomainError(f"1/step must be an integer, got step={step}")
    if p == 1:
        return [PreferenceWeights((1.0,))]
    points = []
    for head in itertools.product(range(1, divisions), repeat=p - 1):
        last = divisions - sum(head)
        if last < 1:
            continue
        counts = head + (last,)
        w = [c / divisions for c in counts]
        # renormalize so the sum is exact to rounding
        w[-1] = 1.0 - sum(w[:-1])
        points.append(PreferenceWeights(tuple(w)))
    return points
