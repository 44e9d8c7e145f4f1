import csv
import json

import pytest

from mogp.cli import main
from reference_values import EX1_DUAL, EX1_X, EX1_Z, EX2_IDEAL_F1, EX2_IDEAL_F2


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "example1")
    assert code == 0
    assert "objectives (p): 2" in out and "constraints (m): 2" in out and "variables (n): 4" in out
    assert "degree of difficulty (scalarized): 3" in out


def test_sweep_reproduces_tables(capsys, tmp_path):
    stem = tmp_path / "ex1.csv"
    code, out, _ = run(capsys, "sweep", "example1", "--step", "0.1", "--max-weight", "0.5", "--csv", str(stem))
    assert code == 0
    with open(tmp_path / "ex1.dual.csv") as fh:
        dual = list(csv.reader(fh))
    with open(tmp_path / "ex1.primal.csv") as fh:
        primal = list(csv.reader(fh))
    assert dual[0] == ["w1", "w2", "w01", "w02", "w03", "w04", "w05", "w11", "w12", "w21", "V"]
    assert len(dual) == 6 and len(primal) == 6
    for i, row in enumerate(dual[1:]):
        vals = [float(v) for v in row]
        assert vals[2:10] == pytest.approx(EX1_DUAL[i], abs=2e-3)
        assert vals[10] == pytest.approx(EX1_Z[i], rel=1e-3)
    for row in primal[1:]:
        assert [float(v) for v in row[2:6]] == pytest.approx(EX1_X, rel=1e-3)
    assert "# dual solution" in out


def test_sweep_csv_byte_stable(capsys, tmp_path):
    for name in ("a", "b"):
        assert run(capsys, "sweep", "example2", "--step", "0.1", "--csv", str(tmp_path / f"{name}.csv"))[0] == 0
    assert (tmp_path / "a.dual.csv").read_bytes() == (tmp_path / "b.dual.csv").read_bytes()
    assert (tmp_path / "a.primal.csv").read_bytes() == (tmp_path / "b.primal.csv").read_bytes()


def test_sweep_json_stdout(capsys):
    code, out, _ = run(capsys, "sweep", "example2", "--step", "0.25", "--json", "--ideal")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["points"]) == 3
    assert doc["ideal"][1]["value"] == pytest.approx(EX2_IDEAL_F2, abs=1e-4)


def test_solve_json_stdout(capsys):
    code, out, _ = run(capsys, "solve", "example1", "--weights", "0.1,0.9")
    assert code == 0
    doc = json.loads(out)
    assert doc["points"][0]["V"] == pytest.approx(EX1_Z[0], rel=1e-3)


def test_solve_json_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "solve", "example1", "--weights", "0.5,0.5", "--json", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["points"][0]["status"] == "Optimal"


def test_ideal(capsys):
    code, out, _ = run(capsys, "ideal", "example2")
    assert code == 0
    lines = out.splitlines()
    assert float(lines[0].split()[2]) == pytest.approx(EX2_IDEAL_F1, abs=1e-4)
    assert "not unique" in lines[0]
    assert float(lines[1].split()[2]) == pytest.approx(EX2_IDEAL_F2, abs=1e-4)


def test_ideal_failure_exit(capsys):
    code, out, _ = run(capsys, "ideal", "example2-verbatim")
    assert code == 2
    assert "f1: no ideal value" in out


def test_check_infeasible(capsys):
    code, out, _ = run(capsys, "check", "example1", "--weights", "0.5,0.5", "--x", "1,1,1,4")
    assert code == 4
    assert "g2(x) = 100" in out and out.rstrip().endswith("infeasible")


def test_check_feasible(capsys):
    # the reference point is rounded to 7 digits, so binding constraints sit just above 1
    x = ",".join(str(v) for v in EX1_X)
    code, out, _ = run(capsys, "check", "example1", "--weights", "0.5,0.5", "--x", x)
    assert code == 4
    code, out, _ = run(capsys, "check", "example1", "--weights", "0.5,0.5", "--x", x, "--tolerance", "1e-5")
    assert code == 0 and out.rstrip().endswith("\nfeasible")


def test_solver_error_exit(capsys, tmp_path):
    f = tmp_path / "bad.yaml"
    f.write_text("variables: [x1, x2]\nobjectives:\n  - terms: [{coef: 1, exps: {x1: 1}}]\n"
                 "constraints:\n  - terms: [{coef: 1, exps: {x1: 1, x2: 1}}]\n")
    code, _, err = run(capsys, "solve", str(f), "--weights", "1")
    assert code == 2 and "DualInfeasible" in err
    code, _, err = run(capsys, "sweep", str(f), "--step", "1")
    assert code == 3


@pytest.mark.parametrize(
    "argv",
    [
        ("solve", "example1", "--weights", "0.5"),
        ("solve", "example1", "--weights", "0.7,0.7"),
        ("check", "example1", "--weights", "0.5,0.5", "--x", "1,1"),
        ("sweep", "example1", "--step", "0.3"),
        ("analyze", "missing.yaml"),
        ("frobnicate",),
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err


def test_parse_error_exit(capsys, tmp_path):
    f = tmp_path / "p.yaml"
    f.write_text("variables: [x]\nobjectives:\n  - terms: [{coef: -3, exps: {x: 1}}]\n")
    code, _, err = run(capsys, "analyze", str(f))
    assert code == 1 and "posynomial coefficient must be positive" in err
