"""Primal recovery from an optimal dual solution, and optimality certificates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mogp.errors import InconsistentCertificate, RecoveryImpossible
from mogp.model import evaluate_posynomial
from mogp.scalarize import ScalarizedProgram
from mogp.solver import OPTIMAL, DualSolution

RESIDUAL_LIMIT = 1e-6


@dataclass(frozen=True, eq=False)
class PrimalSolution:
    x: np.ndarray
    objective_values: np.ndarray  # each original objective at x
    Z: float
    unique: bool
    residual: float = 0.0


@dataclass(frozen=True)
class VerificationReport:
    max_constraint_violation: float
    duality_gap: float
    recovery_residual: float
    active_constraints: frozenset[int]  # 0-based
    active_residual: float  # max |g_i(x) - 1| over active constraints

    def ok(self, tol: float = 1e-6) -> bool:
        return self.max_constraint_violation <= tol and self.duality_gap <= tol


def recovery_system(dual: DualSolution, sp: ScalarizedProgram):
    """Rows ``A`` and right-hand side ``b`` of the log-linear system in ``ln x``."""
    dp = dual.point.dual
    delta = dual.delta
    lam = np.concatenate([[1.0], dual.lam])
    thr = dual.options.active_threshold
    use = delta > thr
    rows = dp.exponent_matrix[use]
    grp = dp.groups[use]
    d = delta[use]
    c = dp.coeffs[use]
    scale = np.where(grp == 0, dual.value, 1.0 / lam[grp])
    return rows, np.log(d * scale) - np.log(c)


def recover_primal(dual: DualSolution, sp: ScalarizedProgram) -> PrimalSolution:
    if dual.status != OPTIMAL:
        raise RecoveryImpossible(f"dual solution is not optimal (status {dual.status})")
    A, b = recovery_system(dual, sp)
    if len(b) < 1:
        raise RecoveryImpossible("no dual variable above the active threshold")
    xi, _, rank, _ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.max(np.abs(A @ xi - b)))
    if residual > RESIDUAL_LIMIT:
        raise InconsistentCertificate(
            f"primal-dual system is inconsistent (residual {residual:.3g}); dual point is not optimal",
            residual=residual,
        )
    x = np.exp(xi)
    values = sp.source.objective_values(x)
    Z = evaluate_posynomial(sp.objective, x)
    return PrimalSolution(x, values, Z, bool(rank == sp.n), residual)


def verify(x: PrimalSolution, dual: DualSolution, sp: ScalarizedProgram) -> VerificationReport:
    xv = x.x if isinstance(x, PrimalSolution) else np.asarray(x, dtype=float)
    g = np.array([evaluate_posynomial(c, xv) for c in sp.constraints])
    violation = float(np.max(np.clip(g - 1.0, 0.0, None))) if len(g) else 0.0
    Z = evaluate_posynomial(sp.objective, xv)
    gap = abs(Z - dual.value) / dual.value
    active = frozenset(dual.active_constraints)
    active_res = max((abs(g[i] - 1.0) for i in active), default=0.0)
    if dual.status == OPTIMAL:
        A, b = recovery_system(dual, sp)
        rec = float(np.max(np.abs(A @ np.log(xv) - b))) if len(b) else 0.0
    else:
        rec = float("inf")
    return VerificationReport(violation, float(gap), rec, active, float(active_res))
