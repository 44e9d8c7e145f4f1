"""Reference problems and random instance generation."""
from __future__ import annotations

import numpy as np

from mogp.model import (
    MultiObjectiveProgram,
    Posynomial,
    RawConstraint,
    RawObjective,
    VariableSpace,
    to_standard_form,
)


def example1() -> MultiObjectiveProgram:
    """Linear cost vs. box volume (the volume objective is maximized)."""
    P = Posynomial.from_arrays
    variables = VariableSpace(("x1", "x2", "x3", "x4"))
    cost = P([4, 10, 4, 2], np.eye(4))
    volume = P([1], [[1, 1, 1, 0]])
    c1 = P([1, 1], [[2, 0, 0, -2], [0, 2, 0, -2]])
    c2 = P([100], [[-1, -1, -1, 0]])
    return to_standard_form(
        [RawObjective(cost), RawObjective(volume, "maximize")],
        [RawConstraint(c1), RawConstraint(c2)],
        variables,
    )


def example2(verbatim: bool = False) -> MultiObjectiveProgram:
    """Two minimized objectives; ``verbatim=True`` uses f1 = 1/(x1 x2 x3)
    instead of the consistent 1/(x1 x2 x3^2)."""
    P = Posynomial.from_arrays
    variables = VariableSpace(("x1", "x2", "x3"))
    f1 = P([1], [[-1, -1, -1 if verbatim else -2]])
    f2 = P([1, 1], [[-1, -3, -5], [-1, -1, 0]])
    c1 = P([1, 1], [[1, 1, 2], [0, 1, 1]])
    c2 = P([1], [[1, 0, 1]])
    return to_standard_form(
        [RawObjective(f1), RawObjective(f2)],
        [RawConstraint(c1, 6.0), RawConstraint(c2, 1.0)],
        variables,
    )


def x_plus_inverse(scale_inverse: float = 1.0) -> MultiObjectiveProgram:
    """min ``x + s/x`` (minimum ``2 sqrt(s)`` at ``x = sqrt(s)``)."""
    g = Posynomial.from_arrays([1.0, scale_inverse], [[1.0], [-1.0]])
    return MultiObjectiveProgram(VariableSpace(("x",)), (g,), ())


def random_program(
    rng: np.random.Generator,
    max_n: int = 4,
    max_dod: int = 3,
    max_constraints: int = 2,
    p: int | None = None,
    canonical: bool = True,
    coef_range=(0.1, 10.0),
    exp_range=3.0,
) -> MultiObjectiveProgram:
    """Random posynomial program with a strictly feasible point.

    Each constraint is scaled so that it holds with slack at a random point.
    With ``canonical=True`` the exponent columns are adjusted so that a
    strictly positive dual feasible point exists, which guarantees an
    attained optimum; otherwise exponents are raw uniform draws and the
    dual may be infeasible.
    """
    n = int(rng.integers(1, max_n + 1))
    dod = int(rng.integers(0, max_dod + 1))
    m = int(rng.integers(0, max_constraints + 1))
    p = p or int(rng.integers(1, 3))
    T = n + 1 + dod
    m = min(m, T - p)
    # objective terms first (each objective at least one), then constraints
    n_obj = int(rng.integers(p, T - m + 1))
    obj_sizes = _split(rng, n_obj, p)
    con_sizes = _split(rng, T - n_obj, m) if m else []
    if not m:
        obj_sizes = _split(rng, T, p)

    A = rng.uniform(-exp_range, exp_range, size=(T, n))
    if canonical:
        delta = rng.uniform(0.2, 1.0, size=T)
        k = sum(obj_sizes)
        delta[:k] /= delta[:k].sum()
        A -= np.outer(np.ones(T), delta @ A) / delta.sum()
        col_max = np.max(np.abs(A), axis=0)
        A *= np.where(col_max > exp_range, exp_range / np.maximum(col_max, 1e-300), 1.0)
    coefs = rng.uniform(*coef_range, size=T)

    names = tuple(f"x{j + 1}" for j in range(n))
    x0 = np.exp(rng.uniform(-1.0, 1.0, size=n))
    objectives, constraints, start = [], [], 0
    for size in obj_sizes:
        g = Posynomial.from_arrays(coefs[start:start + size], A[start:start + size])
        objectives.append(RawObjective(g))
        start += size
    for size in con_sizes:
        g = Posynomial.from_arrays(coefs[start:start + size], A[start:start + size])
        bound = g(x0) / rng.uniform(0.3, 0.9)
        constraints.append(RawConstraint(g, bound))
        start += size
    return to_standard_form(objectives, constraints, VariableSpace(names))


def _split(rng, total, parts):
    """Random composition of ``total`` into ``parts`` positive integers."""
    if parts == 0:
        return []
    cuts = np.sort(rng.choice(np.arange(1, total), size=parts - 1, replace=False)) if parts > 1 else []
    bounds = [0, *cuts, total]
    return [int(b - a) for a, b in zip(bounds[:-1], bounds[1:])]
