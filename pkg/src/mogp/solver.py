"""Maximization of the log-dual objective over ``{delta >= 0, E delta = r}``.

The affine set is parametrized as ``delta = delta0 + N z`` with ``N`` an
orthonormal nullspace basis of the equality matrix. Damped Newton ascent in
``z`` keeps every free component strictly positive; constraint groups whose
sum falls below ``active_threshold`` are pinned to zero (the objective is
linear in a group's scale, so optimal duals may sit on the boundary) and
released again if the implied primal point violates that constraint.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.optimize import linprog
from scipy.special import logsumexp

from mogp.dual import DualPoint, DualProgram, log_dual_hessian, log_dual_objective
from mogp.errors import DualInfeasible, Unbounded

log = logging.getLogger(__name__)

OPTIMAL = "Optimal"
MAX_ITERATIONS = "MaxIterations"

BOUNDARY_FRACTION = 0.99
ARMIJO = 1e-4
DIVERGENCE_LIMIT = 1e8
# released groups are only re-pinned once they have collapsed this far
PIN_FLOOR = 1e-14


@dataclass(frozen=True)
class SolverOptions:
    max_iterations: int = 200
    gradient_tolerance: float = 1e-9
    equality_tolerance: float = 1e-10
    active_threshold: float = 1e-7


@dataclass(frozen=True, eq=False)
class DualSolution:
    point: DualPoint
    value: float
    status: str
    reduced_gradient_norm: float
    iterations: int = 0
    objective_history: tuple[float, ...] = ()
    interior_start: bool = True
    options: SolverOptions = field(default_factory=SolverOptions)

    @property
    def delta(self) -> np.ndarray:
        return self.point.delta

    @property
    def lam(self) -> np.ndarray:
        return self.point.lam

    @property
    def log_value(self) -> float:
        return float(np.log(self.value))

    @property
    def active_constraints(self) -> tuple[int, ...]:
        """0-based indices of constraints with positive multiplier."""
        return tuple(int(i) for i in np.flatnonzero(self.lam > self.options.active_threshold))


def nullspace(E: np.ndarray, rtol: float = 1e-12) -> np.ndarray:
    """Orthonormal nullspace basis via column-pivoted QR of ``E.T``."""
    rows, cols = E.shape
    if cols == 0:
        return np.zeros((0, 0))
    Q, R, _ = scipy.linalg.qr(E.T, pivoting=True)
    scale = np.max(np.linalg.norm(E, axis=1)) if rows else 0.0
    diag = np.abs(np.diag(R)) if R.size else np.zeros(0)
    rank = int(np.sum(diag > rtol * max(scale, np.finfo(float).tiny)))
    return Q[:, rank:]


def _affine_solution(E, r):
    sol, *_ = np.linalg.lstsq(E, r, rcond=None)
    return sol


def _consistency_check(E, r):
    sol = _affine_solution(E, r)
    res = float(np.max(np.abs(E @ sol - r))) if len(r) else 0.0
    if res > 1e-9:
        raise DualInfeasible(
            f"dual equality system is inconsistent (least-squares residual {res:.3g})",
            residual=res,
        )
    return sol


def find_interior_point(dp: DualProgram) -> tuple[DualPoint, bool]:
    """Phase-I: feasible ``delta`` maximizing its smallest component.

    Returns the point and whether it is strictly positive. A maximized minimum
    of exactly zero is accepted (boundary-feasible); a negative one raises
    :class:`DualInfeasible` carrying that value as certificate.
    """
    E, r = dp.E, dp.r
    base = _consistency_check(E, r)
    N = nullspace(E)
    if N.shape[1] == 0:
        smin = float(base.min())
        if smin < -1e-12:
            raise DualInfeasible(
                f"unique dual solution has a negative component ({smin:.6g})", min_component=smin
            )
        delta = np.clip(base, 0.0, None)
        return DualPoint(delta, dp), smin > 0

    # variables (delta_1..delta_T, s): maximize s with delta_t >= s, s <= 1
    T = dp.T
    c = np.zeros(T + 1)
    c[-1] = -1.0
    A_eq = np.hstack([E, np.zeros((E.shape[0], 1))])
    A_ub = np.hstack([-np.eye(T), np.ones((T, 1))])
    res = linprog(
        c,
        A_ub=A_ub,
        b_ub=np.zeros(T),
        A_eq=A_eq,
        b_eq=r,
        bounds=[(None, None)] * T + [(None, 1.0)],
        method="highs",
    )
    if res.status != 0:
        raise DualInfeasible(f"Phase-I linear program failed: {res.message}")
    smin = float(res.x[-1])
    if smin < -1e-9:
        raise DualInfeasible(
            f"no non-negative dual point exists (Phase-I max-min component {smin:.6g})",
            min_component=smin,
        )
    delta = _project(E, r, res.x[:T])
    interior = smin > 1e-9 and delta.min() > 0
    if not interior:
        delta = np.clip(delta, 0.0, None)
    return DualPoint(delta, dp), interior


def _project(E, r, delta, free=None):
    """Move ``delta`` onto ``E delta = r`` changing only the ``free`` entries."""
    delta = np.array(delta, dtype=float)
    idx = np.arange(len(delta)) if free is None else np.flatnonzero(free)
    for _ in range(2):
        resid = E @ delta - r
        corr, *_ = np.linalg.lstsq(E[:, idx], resid, rcond=None)
        delta[idx] -= corr
    return delta


def _free_gradient(dp: DualProgram, delta, free):
    idx = np.flatnonzero(free)
    lam = np.concatenate([[1.0], dp.lambdas(delta)])
    g = dp.groups[idx]
    grad = np.log(dp.coeffs[idx]) - np.log(delta[idx]) - 1.0
    con = g > 0
    grad[con] += np.log(lam[g[con]]) + 1.0
    return grad


def _multipliers(dp: DualProgram, grad, free):
    """Least-squares ``y`` with ``E_F^T y = grad_F``; ``-y[1:]`` estimates ``ln x``."""
    y, *_ = np.linalg.lstsq(dp.E[:, free].T, grad, rcond=None)
    return y


def _violated_groups(dp: DualProgram, y, pinned_groups, tol):
    out = []
    for i in sorted(pinned_groups):
        idx = dp.group_indices(i)
        score = logsumexp(np.log(dp.coeffs[idx]) - dp.E[:, idx].T @ y)
        if score > tol:
            out.append(i)
    return out


def _newton_direction(H_red, g_red):
    # -H_red is positive semidefinite; guard near-singular directions
    w, V = np.linalg.eigh(-H_red)
    floor = max(w.max(initial=0.0), 1.0) * 1e-12
    coef = (V.T @ g_red) / np.maximum(w, floor)
    return V @ coef


def solve_dual(dp: DualProgram, opts: SolverOptions | None = None) -> DualSolution:
    opts = opts or SolverOptions()
    E, r = dp.E, dp.r
    start, interior = find_interior_point(dp)
    N_full = nullspace(E)

    if N_full.shape[1] == 0:
        delta = start.delta
        value = log_dual_objective(dp, delta)
        return DualSolution(DualPoint(delta, dp), float(np.exp(value)), OPTIMAL, 0.0, 0, (value,), interior, opts)

    delta = start.delta.copy()
    free = np.ones(dp.T, dtype=bool)
    pinned: set[int] = set()
    if not interior:
        # whole constraint groups at zero are pinned; other zeros mean the
        # dual has no usable relative interior
        for i in range(1, dp.m + 1):
            idx = dp.group_indices(i)
            if np.all(delta[idx] <= 0):
                pinned.add(i)
                free[idx] = False
        if np.any(delta[free] <= 0):
            raise DualInfeasible(
                "dual feasible set has no point positive on every objective term; "
                "primal infimum is not attained",
                min_component=0.0,
            )
    released: set[int] = set()

    def pin_small_groups(delta):
        """Pin groups whose multiplier fell below threshold; returns the new
        point or ``None`` if nothing changed."""
        lam = dp.lambdas(delta)
        small = [
            i for i in range(1, dp.m + 1)
            if i not in pinned
            and lam[i - 1] < (PIN_FLOOR if i in released else opts.active_threshold)
        ]
        if not small:
            return None
        trial_free = free.copy()
        for i in small:
            trial_free[dp.group_indices(i)] = False
        trial = delta.copy()
        trial[~trial_free] = 0.0
        trial = _project(E, r, trial, trial_free)
        if np.any(trial[trial_free] <= 0):
            return None
        pinned.update(small)
        free[:] = trial_free
        return trial

    def release_step(delta, f, y, groups):
        """Ascent step bringing pinned ``groups`` back in proportions that
        maximize the first-order gain; free terms absorb the equality change."""
        G = np.concatenate([dp.group_indices(i) for i in groups])
        dG = np.zeros(len(G))
        pos = 0
        for i in groups:
            gi = dp.group_indices(i)
            logits = np.log(dp.coeffs[gi]) - E[:, gi].T @ y
            dG[pos:pos + len(gi)] = np.exp(logits - logsumexp(logits))
            pos += len(gi)
        idx = np.flatnonzero(free)
        dF, *_ = np.linalg.lstsq(E[:, idx], -E[:, G] @ dG, rcond=None)
        neg = dF < 0
        eps = min(1.0, BOUNDARY_FRACTION * np.min(-delta[idx][neg] / dF[neg])) if np.any(neg) else 1.0
        for _ in range(80):
            trial = delta.copy()
            trial[idx] += eps * dF
            trial[G] = eps * dG
            f_trial = log_dual_objective(dp, trial)
            if f_trial > f:
                return trial, f_trial
            eps *= 0.5
        return None, f

    N = nullspace(E[:, free])
    f = log_dual_objective(dp, delta)
    history = [f]
    status = MAX_ITERATIONS
    rg_norm = np.inf
    it = 0
    while it < opts.max_iterations:
        idx = np.flatnonzero(free)
        grad = _free_gradient(dp, delta, free)
        rg = N.T @ grad
        rg_norm = float(np.linalg.norm(rg))
        if rg_norm <= opts.gradient_tolerance or N.shape[1] == 0:
            y = _multipliers(dp, grad, free)
            release = _violated_groups(dp, y, pinned, 1e-9)
            if not release:
                status = OPTIMAL
                break
            log.debug("releasing constraint groups %s", release)
            trial, f_trial = release_step(delta, f, y, release)
            it += 1
            if trial is None:
                log.debug("release step failed to ascend; stopping")
                break
            for i in release:
                pinned.discard(i)
                released.add(i)
                free[dp.group_indices(i)] = True
            delta, f = trial, f_trial
            N = nullspace(E[:, free])
            history.append(f)
            continue

        H = log_dual_hessian(dp, delta, free)
        H_red = N.T @ H @ N
        dz = _newton_direction(H_red, rg)
        slope = float(rg @ dz)
        if slope <= 0:
            dz, slope = rg, float(rg @ rg)
        d = N @ dz
        neg = d < 0
        alpha_max = np.min(-delta[idx][neg] / d[neg]) if np.any(neg) else np.inf
        alpha = min(1.0, BOUNDARY_FRACTION * alpha_max)

        accepted = False
        for _ in range(60):
            trial = delta.copy()
            trial[idx] += alpha * d
            if np.all(trial[idx] > 0):
                f_trial = log_dual_objective(dp, trial)
                if f_trial >= f + ARMIJO * alpha * slope:
                    accepted = True
                    break
                if alpha * slope < 1e-14 * (1 + abs(f)) and f_trial >= f - 1e-14 * (1 + abs(f)):
                    # improvement below rounding; accept if stationarity improves
                    rg_trial = N.T @ _free_gradient(dp, trial, free)
                    if np.linalg.norm(rg_trial) < rg_norm:
                        accepted = True
                        break
            alpha *= 0.5
        it += 1
        if not accepted:
            log.debug("line search stalled at iteration %d (reduced gradient %.3g)", it, rg_norm)
            break
        delta, f = trial, f_trial
        if np.max(delta) > DIVERGENCE_LIMIT:
            raise Unbounded("dual iterates diverge with increasing objective; primal is infeasible")
        pinned_point = pin_small_groups(delta)
        if pinned_point is not None:
            delta = pinned_point
            N = nullspace(E[:, free])
            f = log_dual_objective(dp, delta)
        history.append(f)

    delta = _project(E, r, delta, free)
    delta[~free] = 0.0
    delta[np.abs(delta) < 1e-14] = 0.0
    delta = np.clip(delta, 0.0, None)
    f = log_dual_objective(dp, delta)
    return DualSolution(
        DualPoint(delta, dp),
        float(np.exp(f)),
        status,
        rg_norm,
        it,
        tuple(history),
        interior,
        opts,
    )
