"""Posynomial program representation, standard-form conversion and structural analysis."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from mogp.errors import DomainError, NotConvertible


@dataclass(frozen=True)
class VariableSpace:
    names: tuple[str, ...]

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(names) < 1:
            raise DomainError("at least one variable is required")
        if any(not isinstance(s, str) or not s for s in names):
            raise DomainError("variable names must be non-empty strings")
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names in {names}")

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise DomainError(f"unknown variable {name!r}") from None


@dataclass(frozen=True)
class Monomial:
    """A single term ``coefficient * prod_j x_j ** exponents[j]``."""

    coefficient: float
    exponents: tuple[float, ...]

    def __post_init__(self):
        c = float(self.coefficient)
        if not np.isfinite(c) or c <= 0:
            raise DomainError(f"posynomial coefficient must be positive, got {self.coefficient}")
        exps = tuple(float(a) for a in self.exponents)
        if not all(np.isfinite(exps)):
            raise DomainError("exponents must be finite")
        object.__setattr__(self, "coefficient", c)
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    def reciprocal(self) -> "Monomial":
        return Monomial(1.0 / self.coefficient, tuple(-a for a in self.exponents))

    def scaled(self, factor: float) -> "Monomial":
        return Monomial(self.coefficient * factor, self.exponents)


@dataclass(frozen=True)
class Posynomial:
    terms: tuple[Monomial, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise DomainError("a posynomial needs at least one term")
        n = terms[0].n
        if any(t.n != n for t in terms):
            raise DomainError("all terms must share the same variable space")

    @classmethod
    def from_arrays(cls, coefficients, exponents) -> "Posynomial":
        exponents = np.atleast_2d(np.asarray(exponents, dtype=float))
        return cls(tuple(Monomial(c, tuple(row)) for c, row in zip(coefficients, exponents)))

    @property
    def n(self) -> int:
        return self.terms[0].n

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([t.coefficient for t in self.terms])

    @property
    def exponents(self) -> np.ndarray:
        """Dense ``(terms, n)`` exponent matrix."""
        return np.array([t.exponents for t in self.terms], dtype=float).reshape(len(self), self.n)

    def scaled(self, factor: float) -> "Posynomial":
        return Posynomial(tuple(t.scaled(factor) for t in self.terms))

    def __call__(self, x) -> float:
        return evaluate_posynomial(self, x)


@dataclass(frozen=True)
class RawObjective:
    posynomial: Posynomial
    sense: str = "minimize"

    def __post_init__(self):
        if self.sense not in ("minimize", "maximize"):
            raise DomainError(f"objective sense must be 'minimize' or 'maximize', got {self.sense!r}")


@dataclass(frozen=True)
class RawConstraint:
    """``posynomial(x) <= bound``."""

    posynomial: Posynomial
    bound: float = 1.0


@dataclass(frozen=True)
class MultiObjectiveProgram:
    """Standard form: minimize every objective subject to ``g_i(x) <= 1``."""

    variables: VariableSpace
    objectives: tuple[Posynomial, ...]
    constraints: tuple[Posynomial, ...] = field(default=())

    def __post_init__(self):
        objectives = tuple(self.objectives)
        constraints = tuple(self.constraints)
        object.__setattr__(self, "objectives", objectives)
        object.__setattr__(self, "constraints", constraints)
        if not objectives:
            raise DomainError("at least one objective is required")
        n = self.variables.n
        for g in objectives + constraints:
            if g.n != n:
                raise DomainError(f"posynomial over {g.n} variables, program has {n}")

    @property
    def p(self) -> int:
        return len(self.objectives)

    @property
    def m(self) -> int:
        return len(self.constraints)

    @property
    def n(self) -> int:
        return self.variables.n

    def objective_values(self, x) -> np.ndarray:
        return np.array([evaluate_posynomial(g, x) for g in self.objectives])

    def constraint_values(self, x) -> np.ndarray:
        return np.array([evaluate_posynomial(g, x) for g in self.constraints])


def evaluate_posynomial(g: Posynomial, x) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (g.n,):
        raise DomainError(f"expected a point with {g.n} coordinates, got shape {x.shape}")
    if np.any(~(x > 0)):
        raise DomainError("posynomials are only defined for strictly positive x")
    log_terms = np.log(g.coefficients) + g.exponents @ np.log(x)
    return float(np.sum(np.exp(log_terms)))


def to_standard_form(
    objectives: Sequence[RawObjective],
    constraints: Sequence[RawConstraint],
    variables: VariableSpace,
) -> MultiObjectiveProgram:
    """Rewrite monomial maximizations as reciprocal minimizations and divide each
    constraint by its right-hand side."""
    std_objs = []
    for k, obj in enumerate(objectives):
        if obj.sense == "maximize":
            if len(obj.posynomial) != 1:
                raise NotConvertible(
                    f"objective {k + 1}: only a single-monomial maximization can be "
                    f"rewritten as a posynomial minimization ({len(obj.posynomial)} terms given)"
                )
            std_objs.append(Posynomial((obj.posynomial.terms[0].reciprocal(),)))
        else:
            std_objs.append(obj.posynomial)
    std_cons = []
    for i, con in enumerate(constraints):
        b = float(con.bound)
        if not np.isfinite(b) or b <= 0:
            raise DomainError(f"constraint {i + 1}: bound must be positive, got {con.bound}")
        std_cons.append(con.posynomial if b == 1.0 else con.posynomial.scaled(1.0 / b))
    return MultiObjectiveProgram(variables, tuple(std_objs), tuple(std_cons))


def total_terms(objectives: Sequence[Posynomial], constraints: Sequence[Posynomial]) -> int:
    return sum(len(g) for g in objectives) + sum(len(g) for g in constraints)


def degree_of_difficulty(prog) -> int:
    """Number of terms minus number of variables minus one.

    Accepts a :class:`MultiObjectiveProgram` (objective terms of all objectives
    are counted, which equals the scalarized count) or anything with a
    ``program`` attribute holding one.
    """
    prog = getattr(prog, "program", prog)
    return total_terms(prog.objectives, prog.constraints) - prog.n - 1
