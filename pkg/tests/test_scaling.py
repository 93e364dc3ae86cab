"""Alternate scaling: exact traces, float limits, and invariances."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinkscale.errors import ModeError, NonPositiveEntryError, NotSquareError
from sinkscale.matrices import (
    Matrix,
    all_permutations,
    is_doubly_stochastic,
    left_permuted,
    right_permuted,
)
from sinkscale.scaling import (
    residual,
    sinkhorn_iterate,
    sinkhorn_limit,
    symmetric_scaling,
)

entry = st.fractions(min_value=Fraction(1, 8), max_value=Fraction(9),
                     max_denominator=8)
matrices_3x3 = st.lists(st.lists(entry, min_size=3, max_size=3),
                        min_size=3, max_size=3).map(
    lambda rows: Matrix(rows, "rational"))


def test_steps_alternate_row_first():
    m = Matrix([[2, 2, 1], [2, 1, 1], [1, 1, 1]], "rational")
    trace = sinkhorn_iterate(m, 4)
    assert trace.step_kinds == ("row", "column", "row", "column")
    first = trace.snapshot(1)
    assert all(s == 1 for s in first.row_sums())
    second = trace.snapshot(2)
    assert all(s == 1 for s in second.col_sums())


def test_first_row_step_divides_by_row_sums():
    m = Matrix([[2, 2, 1], [2, 1, 1], [1, 1, 1]], "rational")
    first = sinkhorn_iterate(m, 1).snapshot(1)
    assert first[(0, 2)] == Fraction(1, 5)
    assert first[(1, 1)] == Fraction(1, 4)
    assert first[(2, 0)] == Fraction(1, 3)


def test_accumulated_scalings_reproduce_the_last_snapshot():
    m = Matrix([[3, 1, 2], [1, 4, 1], [2, 1, 5]], "rational")
    trace = sinkhorn_iterate(m, 7)
    rebuilt = trace.accumulated_x.apply_left(
        trace.accumulated_y.apply_right(m))
    assert rebuilt == trace.snapshot(7)


def test_zero_steps_is_allowed_and_empty():
    m = Matrix([[1, 2], [3, 4]], "rational")
    trace = sinkhorn_iterate(m, 0)
    assert trace.steps == 0 and trace.snapshots == ()


def test_iterate_rejects_bad_inputs():
    with pytest.raises(NotSquareError):
        sinkhorn_iterate(Matrix([[1, 2, 3], [4, 5, 6]], "rational"), 2)
    with pytest.raises(NonPositiveEntryError):
        sinkhorn_iterate(Matrix([[1, 0], [1, 1]], "rational"), 2)
    with pytest.raises(ValueError):
        sinkhorn_iterate(Matrix([[1]], "rational"), -1)


def test_limit_converges_and_is_doubly_stochastic():
    m = Matrix([[2.0, 1.0, 1.0], [1.0, 1.0, 1.0], [1.0, 1.0, 1.0]], "float")
    result = sinkhorn_limit(m, tol=1e-12)
    assert result.converged
    assert result.residual <= 1e-12
    assert is_doubly_stochastic(result.limit, tol=1e-11)
    rebuilt = result.x.apply_left(result.y.apply_right(m))
    assert rebuilt.max_abs_difference(result.limit) < 1e-12


def test_limit_requires_float_mode():
    with pytest.raises(ModeError):
        sinkhorn_limit(Matrix([[1, 2], [2, 1]], "rational"))


def test_limit_reports_non_convergence_within_budget():
    m = Matrix([[1.0, 100.0, 1.0], [1.0, 1.0, 1.0], [100.0, 1.0, 1.0]],
               "float")
    result = sinkhorn_limit(m, tol=1e-15, max_pairs=1)
    assert not result.converged
    assert result.steps_taken == 2


def test_residual_measures_worst_sum():
    m = Matrix([["1/2", "1/2"], ["1/2", "1"]], "rational")
    assert residual(m) == Fraction(1, 2)


@given(matrices_3x3)
@settings(max_examples=25, deadline=None)
def test_scaling_is_dilation_invariant_step_by_step(m):
    lam = Fraction(7, 3)
    t1 = sinkhorn_iterate(m, 3)
    t2 = sinkhorn_iterate(m.dilated(lam), 3)
    for step in (1, 2, 3):
        assert t1.snapshot(step) == t2.snapshot(step)


@given(matrices_3x3)
@settings(max_examples=15, deadline=None)
def test_row_then_row_is_idempotent(m):
    once = sinkhorn_iterate(m, 1).snapshot(1)
    again = sinkhorn_iterate(once, 1).snapshot(1)
    assert once == again


def test_limit_commutes_with_permutations():
    rng = random.Random(7)
    for _ in range(3):
        rows = [[rng.uniform(0.2, 5.0) for _ in range(3)] for _ in range(3)]
        m = Matrix(rows, "float")
        base = sinkhorn_limit(m, tol=1e-13).limit
        for p in all_permutations(3):
            for q in all_permutations(3):
                moved = left_permuted(p, right_permuted(m, q))
                expected = left_permuted(p, right_permuted(base, q))
                got = sinkhorn_limit(moved, tol=1e-13).limit
                assert got.max_abs_difference(expected) < 1e-9


def test_transpose_commutes_with_scaling():
    m = Matrix([[2.0, 1.0, 0.5], [1.0, 3.0, 1.0], [0.5, 1.0, 1.0]], "float")
    direct = sinkhorn_limit(m.transpose(), tol=1e-13).limit
    transposed = sinkhorn_limit(m, tol=1e-13).limit.transpose()
    assert direct.max_abs_difference(transposed) < 1e-10


def test_symmetric_scaling_balances_symmetric_input():
    m = Matrix([[2.0, 1.0, 1.0], [1.0, 2.0, 1.0], [1.0, 1.0, 1.0]], "float")
    x = symmetric_scaling(m, tol=1e-13)
    balanced = x.apply_left(x.apply_right(m))
    assert is_doubly_stochastic(balanced, tol=1e-10)
