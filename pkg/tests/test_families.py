"""Closed-form scaling limits for the symmetric two-valued families."""

from fractions import Fraction

import pytest

from sinkscale.errors import DegenerateKError, UnsupportedError
from sinkscale.families import (
    RATIO_TO_INFINITY,
    RATIO_TO_ZERO,
    SHAPE_BLOCK,
    SHAPE_BORDERED_PAIR,
    SHAPE_CIRCULANT,
    SHAPE_FULL_SYMMETRIC,
    FamilySpec,
    a2_rationality,
    a7_octic,
    a7_root_candidates,
    asymptotic_limit,
    family_limit,
)
from sinkscale.matrices import DiagonalScaling, Matrix, is_doubly_stochastic
from sinkscale.scaling import sinkhorn_limit


def limit_of(tag, K, **kwargs):
    return family_limit(FamilySpec.a_family(tag, K), **kwargs)


def test_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec.a_family("A1", 0)
    with pytest.raises(ValueError):
        FamilySpec(tag="A9", K=2)
    with pytest.raises(ValueError):
        FamilySpec(tag="MBN", k=1, l=2, M=3, B=None, N=1)
    with pytest.raises(ValueError):
        FamilySpec.mbn(0, 2, 1, 1, 1)


def test_spec_builds_the_named_matrix():
    m = FamilySpec.a_family("A6", 2).matrix()
    assert m == Matrix([[2, 2, 1], [2, 1, 1], [1, 1, 1]], "rational")
    block = FamilySpec.mbn(2, 1, 3, 5, 7).matrix()
    assert block == Matrix([[3, 3, 5], [3, 3, 5], [5, 5, 7]], "rational")
    f = FamilySpec.a_family("A7", "1/2").matrix("float")
    assert f.mode == "float" and f[(2, 2)] == 0.5


def test_diagonal_dominant_limit_is_rational():
    limit = limit_of("A1", 5)
    assert limit.shape == SHAPE_BORDERED_PAIR
    assert limit.entry("a").exact == Fraction(5, 7)
    assert limit.entry("b").exact == Fraction(1, 7)
    assert [v.exact_str() for v in limit.scaling] == ["(0 + 1*sqrt(7))/7"] * 3
    assert is_doubly_stochastic(limit.matrix, tol=1e-12)


def test_bordered_pair_limit_has_surd_entries():
    limit = limit_of("A5", 2)
    assert limit.shape == SHAPE_BORDERED_PAIR
    assert limit.entry("a").exact_str() == "(5 - 1*sqrt(13))/3"
    assert limit.entry("d").exact_str() == "(4 - 1*sqrt(13))/1"
    assert limit.entry("a").decimal(10) == "0.4648162415"
    assert limit.entry("d").decimal(10) == "0.3944487245"
    # c = sqrt(b*d) nests radicals, so only a certified enclosure exists
    c = limit.entry("c")
    assert c.exact_str() is None
    assert c.decimal(10) == "0.3027756377"
    box = c.enclosure
    prod = limit.entry("b").exact * limit.entry("d").exact
    assert box.lo * box.lo < prod < box.hi * box.hi


def test_bordered_pair_limit_collapses_to_rationals():
    # 4K + 5 = 25 is a perfect square at K = 5
    limit = limit_of("A5", 5)
    assert [limit.entry(n).exact_str() for n in "abcd"] == \
        ["5/8", "1/8", "1/4", "1/2"]


def test_circulant_limit_lives_in_the_cube_root_field():
    limit = limit_of("A6", 2)
    assert limit.shape == SHAPE_CIRCULANT
    assert limit.entry("a").exact_str() == "2^(2/3) - 2^(1/3)"
    assert limit.entry("b").exact_str() == "2 - 2^(2/3)"
    assert limit.entry("c").exact_str() == "2^(1/3) - 1"
    assert limit.entry("a").decimal(10) == "0.3274800020"
    assert limit.entry("b").decimal(10) == "0.4125989480"
    assert limit.entry("c").decimal(10) == "0.2599210498"


def test_circulant_limit_collapses_for_perfect_cubes():
    limit = limit_of("A6", 8)
    assert [limit.entry(n).exact_str() for n in "abc"] == ["2/7", "4/7", "1/7"]


def test_full_symmetric_limit_entries_to_fifteen_digits():
    limit = limit_of("A7", 2, precision=40)
    expected = {
        "a": "0.345180267115908",
        "b": "0.443547427206790",
        "c": "0.211272305677300",
        "d": "0.284973300799522",
        "e": "0.271479271993686",
        "f": "0.517248422329012",
    }
    for name, decimal in expected.items():
        assert limit.entry(name).decimal(15) == decimal
    assert limit.scaling[1].decimal(15) == "0.533828905923539"
    assert is_doubly_stochastic(limit.matrix, tol=1e-12)


def test_octic_root_selection_rejects_negative_back_substitution():
    octic = a7_octic(3)
    candidates = a7_root_candidates(3)
    assert len(candidates) == 2
    accepted = [c for c in candidates if c.accepted]
    rejected = [c for c in candidates if not c.accepted]
    assert len(accepted) == 1 and len(rejected) == 1
    assert abs(accepted[0].y - Fraction("0.5083028225")) < 1e-9
    assert abs(rejected[0].y - Fraction("0.9007108688")) < 1e-9
    assert rejected[0].z_sign < 0
    assert abs(rejected[0].z - Fraction("-0.8208182035")) < 1e-9
    for c in candidates:
        assert octic(c.y_enclosure.lo) * octic(c.y_enclosure.hi) <= 0


def test_block_limit_depends_only_on_the_ratio():
    triples = [(2, 5, 3), (6, 5, 1), (Fraction(6, 25), 1, 1)]
    limits = [family_limit(FamilySpec.mbn(1, 2, *t)) for t in triples]
    for limit in limits:
        assert limit.entry("a").exact_str() == "(-37 + 5*sqrt(73))/38"
        assert limit.entry("a").decimal(10) == "0.1505268085"
        assert limit.entries.keys() == {"a", "b", "c"}
    assert limits[0].entries == limits[1].entries == limits[2].entries
    # the scalings do depend on the actual entries, not just the ratio
    assert limits[1].scaling[0].decimal(10) == "0.1583912921"
    assert limits[1].scaling[2].decimal(10) == "0.5363130635"
    assert limits[0].scaling[0].numeric != limits[1].scaling[0].numeric


def test_single_corner_family_is_a_block_instance():
    limit = limit_of("A2", 2)
    assert limit.family == "A2" and limit.shape == SHAPE_BLOCK
    assert limit.entry("a").exact_str() == "(5 - 1*sqrt(17))/2"
    assert limit.entry("a").decimal(10) == "0.4384471871"


def test_degenerate_parameter_paths():
    with pytest.raises(DegenerateKError):
        limit_of("A2", 1)
    uniform = limit_of("A6", 1, allow_degenerate=True)
    assert uniform.degenerate
    assert uniform.entry("a").exact == Fraction(1, 3)
    # an MBN triple with M*N = B**2 needs no flag: nothing is degenerate
    # about the parameters, the limit just happens to be uniform
    block = family_limit(FamilySpec.mbn(1, 2, 4, 2, 1))
    assert block.degenerate
    assert all(v.exact == Fraction(1, 3) for v in block.entries.values())


@pytest.mark.parametrize("tag,K", [("A5", 3), ("A6", 3), ("A7", "1/2")])
def test_closed_forms_match_iterated_scaling(tag, K):
    spec = FamilySpec.a_family(tag, K)
    limit = family_limit(spec)
    iterated = sinkhorn_limit(spec.matrix("float"), tol=1e-13).limit
    assert limit.matrix.max_abs_difference(iterated) < 1e-10


def test_asymptotic_block_directions():
    a2 = FamilySpec.a_family("A2", 7)
    high = asymptotic_limit(a2, RATIO_TO_INFINITY)
    assert high == Matrix([[1, 0, 0], [0, "1/2", "1/2"], [0, "1/2", "1/2"]],
                          "rational")
    low = asymptotic_limit(a2, RATIO_TO_ZERO)
    assert low == Matrix([[0, "1/2", "1/2"], ["1/2", "1/4", "1/4"],
                          ["1/2", "1/4", "1/4"]], "rational")
    # A4's ratio is 1/K**2, but directions name the ratio, not K
    assert asymptotic_limit(FamilySpec.a_family("A4", 7), RATIO_TO_ZERO) == low


def test_asymptotic_wide_block_keeps_positive_corner():
    spec = FamilySpec.mbn(3, 2, 1, 1, 1)
    m = asymptotic_limit(spec, RATIO_TO_ZERO)
    assert m[(0, 0)] == Fraction(1, 9)
    assert m[(0, 3)] == Fraction(1, 3)
    assert m[(3, 3)] == 0
    assert all(s == 1 for s in m.row_sums())
    assert all(s == 1 for s in m.col_sums())


def test_asymptotic_permutation_limits():
    identity = Matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], "rational")
    swap = Matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]], "rational")
    for tag in ("A1", "A5"):
        spec = FamilySpec.a_family(tag, 2)
        assert asymptotic_limit(spec, RATIO_TO_INFINITY) == identity
        with pytest.raises(UnsupportedError):
            asymptotic_limit(spec, RATIO_TO_ZERO)
    assert asymptotic_limit(FamilySpec.a_family("A6", 2),
                            RATIO_TO_INFINITY) == swap
    with pytest.raises(UnsupportedError):
        asymptotic_limit(FamilySpec.a_family("A7", 2), RATIO_TO_INFINITY)
    with pytest.raises(ValueError):
        asymptotic_limit(FamilySpec.a_family("A2", 2), "sideways")


def test_rational_corner_detection():
    assert a2_rationality(2) is None
    assert a2_rationality(Fraction(1, 3)) is None
    form = a2_rationality(3)
    assert form.r == 2
    assert (form.a, form.b, form.c) == \
        (Fraction(1, 2), Fraction(1, 4), Fraction(3, 8))
    assert form.limit == Matrix(
        [["1/2", "1/4", "1/4"], ["1/4", "3/8", "3/8"], ["1/4", "3/8", "3/8"]],
        "rational")
    bigger = a2_rationality(6)
    assert bigger.r == 3
    assert (bigger.a, bigger.b, bigger.c) == \
        (Fraction(3, 5), Fraction(1, 5), Fraction(2, 5))
    with pytest.raises(ValueError):
        a2_rationality(-1)


def test_rational_corner_scaling_pair_is_exact():
    form = a2_rationality(3)
    assert form.x_prime == (Fraction(1, 6), Fraction(1, 4), Fraction(1, 4))
    assert form.y_prime == (Fraction(1), Fraction(3, 2), Fraction(3, 2))
    a = FamilySpec.a_family("A2", 3).matrix()
    scaled = DiagonalScaling(form.x_prime).apply_left(
        DiagonalScaling(form.y_prime).apply_right(a))
    assert scaled == form.limit
    assert all(s == 1 for s in scaled.row_sums())
    assert all(s == 1 for s in scaled.col_sums())
    # the symmetric pair splits the same products: each squared symmetric
    # value equals the matching x'*y' diagonal product
    assert form.x * form.x == form.x_prime[0] * form.y_prime[0]
    assert form.y * form.y == form.x_prime[1] * form.y_prime[1]


def test_limit_json_shape():
    payload = limit_of("A5", 2).to_json_dict(digits=10)
    assert payload["family"] == "A5"
    assert payload["shape"] == SHAPE_BORDERED_PAIR
    assert payload["degenerate"] is False
    assert payload["entries"]["c"]["exact"] is None
    assert payload["entries"]["c"]["numeric"] == "0.3027756377"
    assert len(payload["scaling"]) == 3
    assert payload["matrix"]["mode"] == "float"


def test_full_symmetric_shape_tag():
    assert limit_of("A7", 3).shape == SHAPE_FULL_SYMMETRIC
