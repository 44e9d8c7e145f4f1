import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mogp.dual import build_dual, dual_value, log_dual_gradient, log_dual_objective
from mogp.errors import DomainError
from mogp.model import MultiObjectiveProgram, Posynomial, VariableSpace
from mogp.scalarize import scalarize
from mogp.solver import nullspace
from oracles import central_difference
from sampling import random_interior_points
from reference_values import EX1_DUAL, EX1_Z, EX2_DUAL, W1


@pytest.fixture(scope="module")
def dp1():
    from mogp.instances import example1

    return build_dual(scalarize(example1(), (0.1, 0.9)))


def test_example1_structure(dp1):
    assert dp1.T == 8
    assert dp1.E.shape == (5, 8)
    assert list(dp1.labels) == ["w01", "w02", "w03", "w04", "w05", "w11", "w12", "w21"]
    assert list(dp1.E[0]) == [1, 1, 1, 1, 1, 0, 0, 0]
    # x3 row: w03 - w05 - w21 = 0
    assert list(dp1.E[3]) == [0, 0, 1, 0, -1, 0, 0, -1]
    assert list(dp1.r) == [1, 0, 0, 0, 0]
    assert list(dp1.groups) == [0, 0, 0, 0, 0, 1, 1, 2]


def test_example1_x2_row_sign_of_w12(dp1):
    row1 = np.array(EX1_DUAL[0])
    # x2 enters x2^2 x4^-2 with +2; a hand-entered -2 w12 contradicts the reference row
    flipped = np.array([0, 1, 0, 0, -1, 0, -2, -1])
    assert abs(flipped @ row1) > 1e-2
    assert abs(dp1.E[2] @ row1) < 1e-5
    assert list(dp1.E[2]) == [0, 1, 0, 0, -1, 0, 2, -1]


def test_example2_structure(ex2):
    dp = build_dual(scalarize(ex2, (0.1, 0.9)))
    assert dp.T == 6 and dp.E.shape == (4, 6)
    assert list(dp.E[1]) == [-1, -1, -1, 1, 0, 1]
    assert dp.coeffs[3:5] == pytest.approx([1 / 6, 1 / 6])


def test_one_variable_system(x_inv):
    dp = build_dual(scalarize(x_inv, (1.0,)))
    assert dp.E.tolist() == [[1, 1], [1, -1]]
    assert dp.r.tolist() == [1, 0]


@pytest.mark.parametrize("i", [0, 2, 3, 4])
def test_example1_table_rows_on_affine_set(ex1, i):
    dp = build_dual(scalarize(ex1, (W1[i], 1 - W1[i])))
    assert np.max(np.abs(dp.residual(EX1_DUAL[i]))) <= 1e-5


def test_example1_second_table_row_is_misprinted(ex1):
    # reference w02 = 0.3044397 has two digits swapped and w21 is off by ~7.6e-4
    dp = build_dual(scalarize(ex1, (0.2, 0.8)))
    assert np.max(np.abs(dp.residual(EX1_DUAL[1]))) > 1e-4


@pytest.mark.parametrize("i", range(5))
def test_example2_table_rows_on_affine_set(ex2, i):
    dp = build_dual(scalarize(ex2, (W1[i], 1 - W1[i])))
    assert np.max(np.abs(dp.residual(EX2_DUAL[i]))) <= 1e-5


def test_log_objective_at_first_table_row(dp1):
    assert np.exp(log_dual_objective(dp1, EX1_DUAL[0])) == pytest.approx(EX1_Z[0], abs=1e-3)


def test_log_objective_matches_product_form(dp1):
    d = np.array(EX1_DUAL[0])
    assert np.exp(log_dual_objective(dp1, d)) == pytest.approx(dual_value(dp1, d), rel=1e-12)


def test_x_plus_inverse_value(x_inv):
    dp = build_dual(scalarize(x_inv, (1.0,)))
    assert log_dual_objective(dp, [0.5, 0.5]) == pytest.approx(np.log(2), rel=1e-15)


def test_single_term_value():
    prog = MultiObjectiveProgram(VariableSpace(("x",)), (Posynomial.from_arrays([3.5], [[0.0]]),))
    dp = build_dual(scalarize(prog, (1.0,)))
    assert log_dual_objective(dp, [1.0]) == pytest.approx(np.log(3.5))


def test_zero_entries_use_convention(ex2):
    dp = build_dual(scalarize(ex2, (0.1, 0.9)))
    val = log_dual_objective(dp, EX2_DUAL[0])
    assert np.isfinite(val)
    assert np.exp(val) == pytest.approx(0.1642316, abs=1e-5)


def test_gradient_x_plus_inverse(x_inv):
    dp = build_dual(scalarize(x_inv, (1.0,)))
    g = log_dual_gradient(dp, [0.5, 0.5])
    assert g == pytest.approx([np.log(2) - 1, np.log(2) - 1])
    N = nullspace(dp.E)
    assert N.shape[1] == 0 or np.allclose(N.T @ g, 0)


def test_gradient_minus_one_when_coeffs_equal_delta():
    prog = MultiObjectiveProgram(VariableSpace(("x",)), (Posynomial.from_arrays([0.3, 0.7], [[1.0], [-2.0]]),))
    dp = build_dual(scalarize(prog, (1.0,)))
    assert log_dual_gradient(dp, [0.3, 0.7]) == pytest.approx([-1.0, -1.0])


def test_gradient_rejects_boundary(dp1):
    d = np.array(EX1_DUAL[0])
    d[5] = 0
    with pytest.raises(DomainError):
        log_dual_gradient(dp1, d)


def test_gradient_finite_differences(dp1):
    rng = np.random.default_rng(7)
    for d in random_interior_points(dp1, rng, 20):
        fd = central_difference(lambda v: log_dual_objective(dp1, v), d, h=1e-6)
        assert np.max(np.abs(fd - log_dual_gradient(dp1, d))) <= 1e-6


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 0.99))
def test_concave_along_segments(dp1, seed, alpha):
    rng = np.random.default_rng(seed)
    a, b = random_interior_points(dp1, rng, 2, floor=0.0)
    mid = alpha * a + (1 - alpha) * b
    lhs = log_dual_objective(dp1, mid)
    rhs = alpha * log_dual_objective(dp1, a) + (1 - alpha) * log_dual_objective(dp1, b)
    assert lhs >= rhs - 1e-12
