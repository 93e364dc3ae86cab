"""Matrices in two arithmetic modes, file formats, diagonal scalings and
permutation actions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinkscale.errors import (
    MatrixFormatError,
    ModeError,
    NonPositiveEntryError,
    NotSquareError,
)
from sinkscale.matrices import (
    DiagonalScaling,
    Matrix,
    Permutation,
    all_permutations,
    col_scale,
    default_tolerance,
    is_doubly_stochastic,
    left_permuted,
    parse_matrix,
    perm_compose,
    perm_matrix_apply,
    right_permuted,
    row_scale,
)

entry = st.fractions(min_value=Fraction(1, 8), max_value=Fraction(9),
                     max_denominator=8)
matrices_3x3 = st.lists(st.lists(entry, min_size=3, max_size=3),
                        min_size=3, max_size=3).map(
    lambda rows: Matrix(rows, "rational"))
perms_3 = st.permutations([1, 2, 3]).map(Permutation.from_one_based)


def test_rational_mode_keeps_fractions_exact():
    m = Matrix([["1/3", "2/3"], ["1", "1/2"]], "rational")
    assert m[(0, 0)] == Fraction(1, 3)
    assert m.row_sums() == (Fraction(1), Fraction(3, 2))


def test_float_mode_uses_floats():
    m = Matrix([[0.5, 0.5], [0.25, 0.75]], "float")
    assert isinstance(m[(0, 0)], float)
    assert m.col_sums() == (0.75, 1.25)


def test_mode_mismatch_is_rejected():
    with pytest.raises(ModeError):
        Matrix([[0.5]], "rational")


def test_text_format_round_trip():
    m = Matrix([["2", "1"], ["1/3", "5"]], "rational")
    again = Matrix.from_text(m.to_text())
    assert again == m and again.mode == "rational"


def test_json_format_round_trip():
    m = Matrix([[2.0, 1.0], [0.5, 5.0]], "float")
    again = Matrix.from_json_dict(m.to_json_dict())
    assert again == m and again.mode == "float"


def test_parse_matrix_auto_detects_format():
    text = "2 2 rational\n1 2\n3 4\n"
    assert parse_matrix(text)[(1, 0)] == 3
    as_json = parse_matrix(Matrix([[1, 2], [3, 4]], "rational")
                           .to_json_dict().__str__().replace("'", '"'))
    assert as_json[(0, 1)] == 2


@pytest.mark.parametrize("text", [
    "",
    "nonsense",
    "2 2 rational\n1 2\n",          # missing row
    "2 2 rational\n1 2\n3\n",        # short row
    "2 2 complex\n1 2\n3 4\n",       # unknown mode
])
def test_malformed_text_raises_format_error(text):
    with pytest.raises(MatrixFormatError):
        Matrix.from_text(text)


def test_dilation_scales_every_entry():
    m = Matrix([[1, 2], [3, 4]], "rational")
    d = m.dilated(Fraction(1, 2))
    assert d[(1, 1)] == 2


def test_row_and_col_scale_normalise_sums():
    m = Matrix([[2, 1, 1], [1, 1, 1], [1, 1, 1]], "rational")
    _, r = row_scale(m)
    assert all(s == 1 for s in r.row_sums())
    _, c = col_scale(m)
    assert all(s == 1 for s in c.col_sums())


def test_scaling_requires_positive_entries():
    z = Matrix([[1, 0], [1, 1]], "rational")
    with pytest.raises(NonPositiveEntryError):
        row_scale(z)


def test_diagonal_scaling_compose_and_inverse():
    d = DiagonalScaling([Fraction(2), Fraction(3)])
    e = DiagonalScaling([Fraction(1, 2), Fraction(1, 3)])
    assert d.compose(e) == DiagonalScaling.identity(2)
    assert d.inverse() == e
    m = Matrix([[1, 1], [1, 1]], "rational")
    assert d.apply_left(m)[(1, 0)] == 3
    assert d.apply_right(m)[(0, 1)] == 3


def test_permutation_matrix_has_ones_where_j_equals_sigma_i():
    sigma = Permutation.from_one_based([2, 3, 1])
    pm = sigma.matrix()
    for i in range(3):
        for j in range(3):
            assert pm[(i, j)] == (1 if j == sigma(i) else 0)


def test_permutation_inverse_and_identity():
    sigma = Permutation.from_one_based([3, 1, 2])
    assert perm_compose(sigma, sigma.inverse()).is_identity()
    assert Permutation.identity(3).one_based() == [1, 2, 3]


@given(perms_3, perms_3)
@settings(max_examples=36, deadline=None)
def test_composition_matches_matrix_product(sigma, tau):
    composed = perm_compose(sigma, tau)
    product_rows = []
    sm, tm = sigma.matrix(), tau.matrix()
    for i in range(3):
        product_rows.append([
            sum(sm[(i, k)] * tm[(k, j)] for k in range(3)) for j in range(3)
        ])
    assert composed.matrix() == Matrix(product_rows, "rational")


@given(perms_3, matrices_3x3)
@settings(max_examples=25, deadline=None)
def test_left_action_permutes_rows(sigma, m):
    moved = left_permuted(sigma, m)
    # (P A) takes its row i from row sigma(i) of the original
    for i in range(3):
        for j in range(3):
            assert moved[(i, j)] == m[(sigma(i), j)]


@given(perms_3, matrices_3x3)
@settings(max_examples=25, deadline=None)
def test_right_action_permutes_columns(sigma, m):
    moved = right_permuted(m, sigma)
    # (A Q) sends column j of the original to column sigma(j)
    for i in range(3):
        for j in range(3):
            assert moved[(i, sigma(j))] == m[(i, j)]


@given(perms_3, perms_3, matrices_3x3)
@settings(max_examples=20, deadline=None)
def test_two_sided_action_is_associative(sigma, tau, m):
    once = left_permuted(sigma, right_permuted(m, tau))
    twice = right_permuted(left_permuted(sigma, m), tau)
    assert once == twice


def test_perm_matrix_apply_matches_actions():
    sigma = Permutation.from_one_based([2, 3, 1])
    m = Matrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]], "rational")
    assert perm_matrix_apply(sigma, m, "left") == left_permuted(sigma, m)


def test_all_permutations_is_lexicographic_and_complete():
    perms = list(all_permutations(3))
    assert len(perms) == 6
    assert perms[0].is_identity()
    assert [p.one_based() for p in perms] == sorted(p.one_based() for p in perms)


def test_doubly_stochastic_check_modes():
    ds = Matrix([["1/2", "1/2"], ["1/2", "1/2"]], "rational")
    assert is_doubly_stochastic(ds)
    assert default_tolerance(ds) == 0.0
    near = Matrix([[0.5, 0.5], [0.5, 0.5 + 1e-13]], "float")
    assert is_doubly_stochastic(near)  # inside the float tolerance
    assert not is_doubly_stochastic(Matrix([[1, 1], [1, 1]], "rational"))


def test_non_square_rejected_where_squareness_matters():
    wide = Matrix([[1, 2, 3], [4, 5, 6]], "rational")
    from sinkscale.matrices import require_square
    with pytest.raises(NotSquareError):
        require_square(wide)
