"""Construction and evaluation of the dual geometric program.

Dual variables ``delta`` carry one entry per primal term, objective terms
first, then each constraint's terms in order. Group 0 is the objective,
group ``i`` (1-based) is constraint ``i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mogp.errors import DomainError
from mogp.scalarize import ScalarizedProgram


@dataclass(frozen=True, eq=False)
class DualProgram:
    coeffs: np.ndarray  # (T,) effective coefficients
    groups: np.ndarray  # (T,) group id per term
    exponent_matrix: np.ndarray  # (T, n)
    E: np.ndarray  # (n + 1, T)
    r: np.ndarray  # (n + 1,)
    labels: tuple[str, ...]  # w01, w02, ..., w11, ...

    @property
    def T(self) -> int:
        return len(self.coeffs)

    @property
    def n(self) -> int:
        return self.exponent_matrix.shape[1]

    @property
    def m(self) -> int:
        return int(self.groups.max()) if self.T else 0

    @property
    def degree_of_difficulty(self) -> int:
        return self.T - self.n - 1

    @property
    def objective_mask(self) -> np.ndarray:
        return self.groups == 0

    def group_indices(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.groups == i)

    def lambdas(self, delta) -> np.ndarray:
        """Per-constraint sums of dual variables (length m)."""
        delta = np.asarray(delta, dtype=float)
        return np.bincount(self.groups, weights=delta, minlength=self.m + 1)[1:]

    def residual(self, delta) -> np.ndarray:
        return self.E @ np.asarray(delta, dtype=float) - self.r


@dataclass(frozen=True, eq=False)
class DualPoint:
    delta: np.ndarray
    dual: DualProgram

    @property
    def lam(self) -> np.ndarray:
        return self.dual.lambdas(self.delta)


def _term_label(group: int, t: int) -> str:
    if t < 10 and group < 10:
        return f"w{group}{t}"
    return f"w{group}_{t}"


def build_dual(sp: ScalarizedProgram) -> DualProgram:
    obj = sp.objective
    posys = (obj,) + tuple(sp.constraints)
    coeffs = np.concatenate([g.coefficients for g in posys])
    groups = np.concatenate([np.full(len(g), i, dtype=int) for i, g in enumerate(posys)])
    A = np.vstack([g.exponents for g in posys])
    T, n = A.shape
    E = np.zeros((n + 1, T))
    E[0] = groups == 0
    E[1:] = A.T
    r = np.zeros(n + 1)
    r[0] = 1.0
    labels = tuple(_term_label(i, t + 1) for i, g in enumerate(posys) for t in range(len(g)))
    return DualProgram(coeffs, groups, A, E, r, labels)


def _xlogx(v):
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    pos = v > 0
    out[pos] = v[pos] * np.log(v[pos])
    return out


def log_dual_objective(dp: DualProgram, pt) -> float:
    """``sum_t delta_t (ln c_t - ln delta_t) + sum_i lambda_i ln lambda_i`` with 0 ln 0 = 0."""
    delta = np.asarray(getattr(pt, "delta", pt), dtype=float)
    if np.any(delta < 0):
        raise DomainError("dual variables must be non-negative")
    lam = dp.lambdas(delta)
    return float(delta @ np.log(dp.coeffs) - _xlogx(delta).sum() + _xlogx(lam).sum())


def log_dual_gradient(dp: DualProgram, pt) -> np.ndarray:
    delta = np.asarray(getattr(pt, "delta", pt), dtype=float)
    if np.any(delta <= 0):
        raise DomainError("log-dual gradient is undefined on the boundary (some delta_t <= 0)")
    lam = np.concatenate([[1.0], dp.lambdas(delta)])
    grad = np.log(dp.coeffs) - np.log(delta) - 1.0
    con = dp.groups > 0
    grad[con] += np.log(lam[dp.groups[con]]) + 1.0
    return grad


def log_dual_hessian(dp: DualProgram, delta, free=None) -> np.ndarray:
    """Hessian of the log-dual objective restricted to the ``free`` terms
    (default all), which must be strictly positive."""
    delta = np.asarray(delta, dtype=float)
    idx = np.arange(dp.T) if free is None else np.flatnonzero(free)
    H = -np.diag(1.0 / delta[idx])
    lam = dp.lambdas(delta)
    g = dp.groups[idx]
    for i in np.unique(g[g > 0]):
        block = np.flatnonzero(g == i)
        H[np.ix_(block, block)] += 1.0 / lam[i - 1]
    return H


def dual_value(dp: DualProgram, delta) -> float:
    """Dual objective V in product form, evaluated factor by factor."""
    delta = np.asarray(delta, dtype=float)
    v = 1.0
    for c, d in zip(dp.coeffs, delta):
        if d > 0:
            v *= (c / d) ** d
    for lam in dp.lambdas(delta):
        if lam > 0:
            v *= lam**lam
    return v
