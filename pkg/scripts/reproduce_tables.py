"""Print dual and primal tables for the bundled worked problems, side by
side with the reference values and the largest deviation per table."""
import argparse
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from mogp import io as gpio  # noqa: E402
from mogp.instances import example1, example2  # noqa: E402
from mogp.sweep import ideal_points, sweep  # noqa: E402
import reference_values as ref  # noqa: E402

PROBLEMS = {
    "example1": (example1, ref.EX1_DUAL, [ref.EX1_X] * 5, ref.EX1_Z),
    "example2": (example2, ref.EX2_DUAL, ref.EX2_X, ref.EX2_Z),
}


def show(name):
    build, dual_ref, x_ref, z_ref = PROBLEMS[name]
    rep = sweep(build(), [(w, 1 - w) for w in ref.W1])
    dh, drows = gpio.dual_table(rep)
    ph, prows = gpio.primal_table(rep)
    print(f"== {name}: dual")
    print(gpio.table_csv(dh, drows), end="")
    D = np.array([r[2:-1] for r in drows], dtype=float)
    print(f"max |delta - reference| = {np.max(np.abs(D - np.array(dual_ref))):.3g}")
    V = np.array([r[-1] for r in drows], dtype=float)
    print(f"max rel |V - reference| = {np.max(np.abs(V / np.array(z_ref) - 1)):.3g}")
    print(f"== {name}: primal")
    print(gpio.table_csv(ph, prows), end="")
    X = np.array([r[2:-1] for r in prows], dtype=float)
    print(f"max rel |x - reference| = {np.max(np.abs(X / np.array(x_ref) - 1)):.3g}")
    print()


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("problems", nargs="*", help=f"any of {', '.join(PROBLEMS)} (default: all)")
    args = ap.parse_args()
    unknown = set(args.problems) - set(PROBLEMS)
    if unknown:
        ap.error(f"unknown problem(s): {', '.join(sorted(unknown))}")
    args.problems = args.problems or list(PROBLEMS)
    for name in args.problems:
        show(name)
    if "example2" in args.problems:
        print("== example2: ideal values")
        for k, iv in enumerate(ideal_points(example2())):
            print(f"f{k + 1} = {gpio.fmt(iv.value)}  x = {[gpio.fmt(v) for v in iv.x]}  unique={iv.unique}")


if __name__ == "__main__":
    main()
