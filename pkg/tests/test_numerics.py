"""Exact scalar arithmetic: rationals, surds, cubic field elements,
intervals and certified decimal output."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinkscale.errors import NonIsolatingError
from sinkscale.numerics import (
    CubicFieldElement,
    QuadraticSurd,
    RationalInterval,
    algebraic_floor,
    bisect_once,
    cbrt_enclosure,
    decimal_truncate,
    format_cubic,
    format_rational,
    format_surd,
    parse_rational,
    rational_cbrt,
    split_square,
    sqrt_bounds,
    sqrt_enclosure,
    sqrt_of_rational,
)

rationals = st.fractions(min_value=Fraction(-1000), max_value=Fraction(1000),
                         max_denominator=997)
positive_rationals = st.fractions(min_value=Fraction(1, 997),
                                  max_value=Fraction(1000),
                                  max_denominator=997)


def test_parse_rational_accepts_fraction_strings():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(Fraction(2, 6)) == Fraction(1, 3)
    assert parse_rational(5) == Fraction(5)


def test_parse_rational_rejects_junk():
    with pytest.raises(ValueError):
        parse_rational("three halves")


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_rational_canonical_forms():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-10, 4)) == "-5/2"


def test_decimal_truncate_never_rounds_up():
    assert decimal_truncate(Fraction(2, 3), 5) == "0.66666"
    assert decimal_truncate(Fraction(1, 3), 5) == "0.33333"
    assert decimal_truncate(Fraction(13, 50), 10) == "0.2600000000"
    # 2^(1/3) - 1 = 0.25992104989...: the 10-digit truncation keeps the 8
    assert decimal_truncate(0.2599210498948732, 10) == "0.2599210498"


def test_decimal_truncate_handles_magnitudes():
    assert decimal_truncate(Fraction(12345, 1), 3) == "12300"
    assert decimal_truncate(Fraction(-2, 3), 4) == "-0.6666"
    assert decimal_truncate(Fraction(1, 800), 3) == "0.00125"
    assert decimal_truncate(Fraction(0), 5) == "0"


@given(positive_rationals, st.integers(min_value=1, max_value=18))
def test_decimal_truncate_is_a_lower_bound(q, digits):
    shown = Fraction(decimal_truncate(q, digits))
    assert shown <= q
    # the discarded tail is below one unit in the last shown digit
    if shown != 0:
        import math
        magnitude = 10 ** (digits - 1 - math.floor(math.log10(float(q))))
        assert (q - shown) * magnitude < 1


@given(positive_rationals, st.integers(min_value=1, max_value=25))
def test_sqrt_bounds_bracket_the_square_root(q, digits):
    box = sqrt_bounds(q, digits)
    assert box.lo >= 0
    assert box.lo * box.lo <= q <= box.hi * box.hi
    assert box.width <= Fraction(1, 10 ** digits)


def test_split_square_extracts_square_factors():
    assert split_square(72) == (6, 2)
    assert split_square(49) == (7, 1)
    assert split_square(1) == (1, 1)
    assert split_square(30) == (1, 30)


def test_rational_cbrt_detects_perfect_cubes():
    assert rational_cbrt(Fraction(8, 27)) == Fraction(2, 3)
    assert rational_cbrt(Fraction(1)) == 1
    assert rational_cbrt(Fraction(2)) is None


def test_surd_canonicalisation():
    s = QuadraticSurd(0, 1, 8)  # sqrt(8) = 2 sqrt(2)
    assert (s.q, s.d) == (2, 2)
    collapsed = QuadraticSurd(1, 2, 9)  # 1 + 2*3
    assert collapsed.is_rational and collapsed.as_fraction() == 7


def test_surd_arithmetic_stays_in_the_field():
    s = QuadraticSurd(5, -1, 13)  # 5 - sqrt(13)
    conj = QuadraticSurd(5, 1, 13)
    product = s * conj
    assert product.is_rational and product.as_fraction() == 12
    assert (s + conj).as_fraction() == 10
    mixed = Fraction(1, 2) + s * Fraction(1, 3)
    assert mixed == QuadraticSurd(Fraction(13, 6), Fraction(-1, 3), 13)


def test_surd_comparisons_are_exact():
    s = QuadraticSurd(0, 1, 2)  # sqrt(2)
    assert s > Fraction(14142, 10000)
    assert s < Fraction(14143, 10000)
    assert QuadraticSurd(3, -2, 2) > 0  # 3 - 2 sqrt(2) = 0.17...


def test_surd_enclosure_brackets_the_value():
    s = QuadraticSurd(5, -1, 13)
    box = s.enclosure(Fraction(1, 10 ** 30))
    assert box.width <= Fraction(1, 10 ** 30)
    assert float(box.lo) <= float(s) <= float(box.hi)


def test_sqrt_of_rational_returns_exact_or_surd():
    assert sqrt_of_rational(Fraction(9, 4)) == Fraction(3, 2)
    root = sqrt_of_rational(Fraction(1, 2))
    assert isinstance(root, QuadraticSurd)
    assert root * root == Fraction(1, 2)


def test_format_surd_normal_form():
    assert format_surd(QuadraticSurd(Fraction(-37, 38), Fraction(5, 38), 73)) \
        == "(-37 + 5*sqrt(73))/38"


def test_cubic_field_element_reduction():
    t = CubicFieldElement(0, 1, 0, 2)  # 2^(1/3)
    assert t * t * t == Fraction(2)
    square = t * t
    assert (square.c0, square.c1, square.c2) == (0, 0, 1)


def test_cubic_field_element_degenerates_for_perfect_cubes():
    t = CubicFieldElement(0, 1, 0, 8)
    assert t.degenerate_to_rational
    assert t.is_rational and t.as_fraction() == 2


def test_format_cubic_reads_like_a_radical():
    t = CubicFieldElement(-1, 1, 0, 2)
    assert format_cubic(t) == "2^(1/3) - 1"


def test_cubic_enclosure_brackets_the_value():
    t = CubicFieldElement(-1, 1, 0, 2)
    box = t.enclosure(Fraction(1, 10 ** 25))
    # the enclosed value x satisfies (x + 1)^3 = 2
    assert (box.lo + 1) ** 3 <= 2 <= (box.hi + 1) ** 3
    assert box.width <= Fraction(1, 10 ** 25)


def test_interval_arithmetic_bounds():
    a = RationalInterval(Fraction(1, 3), Fraction(1, 2))
    b = RationalInterval(Fraction(-1), Fraction(2))
    total = a + b
    assert (total.lo, total.hi) == (Fraction(-2, 3), Fraction(5, 2))
    product = a * b
    assert (product.lo, product.hi) == (Fraction(-1, 2), Fraction(1))
    assert a.scaled(6).lo == 2 and a.shifted(1).hi == Fraction(3, 2)


@given(st.tuples(rationals, rationals), st.tuples(rationals, rationals),
       rationals, rationals)
@settings(max_examples=60)
def test_interval_operations_contain_pointwise_results(abox, bbox, x, y):
    a = RationalInterval(min(abox), max(abox))
    b = RationalInterval(min(bbox), max(bbox))
    px = min(max(x, a.lo), a.hi)
    py = min(max(y, b.lo), b.hi)
    assert (a + b).contains(px + py)
    assert (a * b).contains(px * py)


def test_interval_is_immutable():
    box = RationalInterval(0, 1)
    with pytest.raises(AttributeError):
        box.lo = Fraction(2)


def test_enclosure_helpers_bracket_known_roots():
    two = sqrt_enclosure(Fraction(2), Fraction(1, 10 ** 12))
    assert two.lo ** 2 <= 2 <= two.hi ** 2
    cb = cbrt_enclosure(Fraction(2), Fraction(1, 10 ** 12))
    assert cb.lo ** 3 <= 2 <= cb.hi ** 3


def test_bisect_once_halves_and_detects_exact_roots():
    f = lambda x: x * x - 4
    box = bisect_once(f, RationalInterval(0, 3))
    assert box.width == Fraction(3, 2)
    exact = bisect_once(f, RationalInterval(1, 3))  # midpoint hits the root
    assert exact.is_point() and exact.lo == 2


def test_algebraic_floor_pins_integer_parts():
    # root sqrt(2) of t^2 - 2 on [1, 2]
    assert algebraic_floor([-2, 0, 1], RationalInterval(1, 2)) == 1
    # integer root found exactly
    assert algebraic_floor([-3, 1], RationalInterval(2, 4)) == 3
    with pytest.raises(NonIsolatingError):
        algebraic_floor([1, 0, 1], RationalInterval(0, 1))  # no real root
