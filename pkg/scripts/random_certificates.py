"""Solve many random programs and summarize status counts and the worst
certificate values (duality gap, feasibility, equality residual)."""
import argparse
from collections import Counter

import numpy as np

from mogp.errors import GPError
from mogp.instances import random_program
from mogp.sweep import solve_point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--raw", action="store_true", help="unadjusted exponents (dual may be infeasible)")
    args = ap.parse_args()

    status = Counter()
    worst = dict(gap=0.0, violation=0.0, residual=0.0)
    for seed in range(args.seed, args.seed + args.count):
        rng = np.random.default_rng(seed)
        prog = random_program(rng, canonical=not args.raw)
        w = np.full(prog.p, 1 / prog.p)
        w[-1] = 1 - w[:-1].sum()
        try:
            pt = solve_point(prog, tuple(w))
        except GPError as exc:
            status[type(exc).__name__] += 1
            continue
        status[pt.dual.status] += 1
        dp = pt.dual.point.dual
        worst["gap"] = max(worst["gap"], pt.report.duality_gap)
        worst["violation"] = max(worst["violation"], pt.report.max_constraint_violation)
        worst["residual"] = max(worst["residual"], float(np.max(np.abs(dp.residual(pt.dual.delta)))))
    for k, v in sorted(status.items()):
        print(f"{k}: {v}")
    for k, v in worst.items():
        print(f"worst {k}: {v:.3g}")


if __name__ == "__main__":
    main()
