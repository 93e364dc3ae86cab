"""Rational approximation of cube roots from scaling iterates, and certified
continued fractions of algebraic numbers.

Iterating the circulant cube-root family in exact rational arithmetic yields
three sequences of fractions converging to K**(1/3) through the affine map
(K-1)*a + 1.  For comparison, the continued fraction of an algebraic target
is extracted from its minimal polynomial with every partial quotient
certified by interval refinement before it is emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NonIsolatingError
from .matrices import Matrix
from .numerics import (
    RationalInterval,
    bisect_once,
    algebraic_floor,
    cbrt_enclosure,
    decimal_truncate,
    format_rational,
    parse_rational,
    rational_cbrt,
)
from .roots import Polynomial, isolate_roots_in
from .scaling import sinkhorn_iterate


def cbrt_polynomial(K) -> Polynomial:
    """Minimal-style polynomial t**3 - K with root K**(1/3)."""
    return Polynomial([-parse_rational(K), 0, 0, 1])


def cbrt_minus_one_polynomial(K) -> Polynomial:
    """(t+1)**3 - K expanded: the monic cubic with root K**(1/3) - 1."""
    K = parse_rational(K)
    return Polynomial([1 - K, 3, 3, 1])


def _a6_matrix(K: Fraction) -> Matrix:
    K = Fraction(K)
    one = Fraction(1)
    return Matrix([[K, K, one], [K, one, one], [one, one, one]], "rational")


def _abs_interval(iv: RationalInterval) -> RationalInterval:
    if iv.lo >= 0:
        return iv
    if iv.hi <= 0:
        return RationalInterval(-iv.hi, -iv.lo)
    return RationalInterval(0, max(-iv.lo, iv.hi))


def _error_interval(value: Fraction, target: RationalInterval) -> RationalInterval:
    """Certified enclosure of |value - target|."""
    return _abs_interval(RationalInterval(value - target.hi, value - target.lo))


def certified_decimal(iv: RationalInterval, digits: int) -> str:
    """Truncated decimal of the number enclosed by ``iv``; every printed
    digit is certified by endpoint agreement."""
    lo = decimal_truncate(iv.lo, digits)
    hi = decimal_truncate(iv.hi, digits)
    if lo == hi:
        return lo
    return decimal_truncate(iv.midpoint, digits)


@dataclass(frozen=True)
class ApproximantRow:
    """One iteration level: three tracked entries and their cube-root
    estimates (K-1)*a + 1 with certified error enclosures."""

    level: int
    a13: Fraction
    a22: Fraction
    a31: Fraction
    estimates: tuple[Fraction, Fraction, Fraction]
    errors: tuple[RationalInterval, RationalInterval, RationalInterval]

    def to_json_dict(self) -> dict:
        return {
            "level": self.level,
            "a13": format_rational(self.a13),
            "a22": format_rational(self.a22),
            "a31": format_rational(self.a31),
            "estimates": [format_rational(e) for e in self.estimates],
            "errors": [certified_decimal(e, 10) for e in self.errors],
        }


@dataclass(frozen=True)
class ApproximantTable:
    """Exact iterate entries of the circulant cube-root family and the
    derived rational approximations to K**(1/3)."""

    K: Fraction
    rows: tuple[ApproximantRow, ...]
    cbrt_enclosure: RationalInterval
    exact_cbrt: Fraction | None

    @property
    def limit_is_rational(self) -> bool:
        return self.exact_cbrt is not None

    def to_json_dict(self) -> dict:
        return {
            "K": format_rational(self.K),
            "limit_is_rational": self.limit_is_rational,
            "exact_cbrt": (None if self.exact_cbrt is None
                           else format_rational(self.exact_cbrt)),
            "rows": [row.to_json_dict() for row in self.rows],
        }

    def to_text(self) -> str:
        lines = [f"cube-root approximants for K = {format_rational(self.K)}"]
        if self.limit_is_rational:
            lines.append(f"K is a perfect cube: K**(1/3) = "
                         f"{format_rational(self.exact_cbrt)}")
        header = f"{'step':>4}  {'a13':<28} {'a22':<28} {'a31':<28}"
        lines.append(header)
        for row in self.rows:
            lines.append(f"{row.level:>4}  {format_rational(row.a13):<28} "
                         f"{format_rational(row.a22):<28} "
                         f"{format_rational(row.a31):<28}")
            ests = ", ".join(format_rational(e) for e in row.estimates)
            errs = ", ".join(certified_decimal(e, 10) for e in row.errors)
            lines.append(f"      estimates (K-1)*a + 1: {ests}")
            lines.append(f"      errors vs K**(1/3):    {errs}")
        return "\n".join(lines)


def cbrt_approximants(K, steps: int) -> ApproximantTable:
    """Track entries (1,3), (2,2), (3,1) of the alternate scaling of the
    circulant cube-root matrix [[K,K,1],[K,1,1],[1,1,1]] in exact rational
    arithmetic, one row per elementary scaling step.

    Each entry a yields the estimate (K-1)*a + 1 of K**(1/3), with a
    certified error enclosure.  A perfect-cube K is allowed but flagged:
    the limit is rational.
    """
    K = parse_rational(K)
    if K <= 1:
        raise ValueError("K must exceed 1")
    if steps < 1:
        raise ValueError("steps must be positive")
    trace = sinkhorn_iterate(_a6_matrix(K), steps)
    exact = rational_cbrt(K)
    if exact is not None:
        target = RationalInterval(exact, exact)
    else:
        target = cbrt_enclosure(K, Fraction(1, 10 ** 60))
    rows = []
    for level in range(1, steps + 1):
        snap = trace.snapshot(level)
        a13, a22, a31 = snap[(0, 2)], snap[(1, 1)], snap[(2, 0)]
        estimates = tuple((K - 1) * a + 1 for a in (a13, a22, a31))
        errors = tuple(_error_interval(e, target) for e in estimates)
        rows.append(ApproximantRow(level=level, a13=a13, a22=a22, a31=a31,
                                   estimates=estimates, errors=errors))
    return ApproximantTable(K=K, rows=tuple(rows), cbrt_enclosure=target,
                            exact_cbrt=exact)


@dataclass(frozen=True)
class ContinuedFraction:
    """Partial quotients with their convergents; ``finite`` marks an exact
    rational target whose full expansion ended before the requested length."""

    terms: tuple[int, ...]
    convergents: tuple[Fraction, ...]
    finite: bool
    value: Fraction | None = None

    def to_json_dict(self) -> dict:
        return {
            "terms": list(self.terms),
            "convergents": [format_rational(c) for c in self.convergents],
            "finite": self.finite,
            "value": None if self.value is None else format_rational(self.value),
        }


def _convergents(terms) -> tuple[Fraction, ...]:
    h_prev, h = 0, 1
    k_prev, k = 1, 0
    out = []
    for a in terms:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        out.append(Fraction(h, k))
    return tuple(out)


def cfrac_algebraic(p: Polynomial, enclosure: RationalInterval,
                    n_terms: int) -> ContinuedFraction:
    """First ``n_terms`` partial quotients of the real root of p isolated
    by ``enclosure``, each certified before emission.

    A term is emitted only once the refined enclosure pins its floor
    (identical floors at both endpoints).  The iteration step replaces the
    polynomial by the exact transform x -> 1/(x - a), so every quotient is
    a statement about the original algebraic number, not about a decimal
    approximation.  An exact rational root ends the expansion early with
    ``finite`` set and the root attached.
    """
    if n_terms < 1:
        raise ValueError("n_terms must be positive")
    poly = p.squarefree_part()
    iv = enclosure
    terms: list[int] = []
    while len(terms) < n_terms:
        a = algebraic_floor(poly, iv)
        if iv.is_point():
            return _finish_rational(terms, _finite_expansion(iv.lo), n_terms)
        if poly(Fraction(a)) == 0 and iv.contains(a):
            return _finish_rational(terms, [a], n_terms)
        terms.append(a)
        if len(terms) == n_terms:
            break
        # refine until the fractional part is strictly inside (0, 1)
        while not (iv.lo > a and iv.hi < a + 1):
            iv = bisect_once(poly, iv)
            if iv.is_point():
                break
        if iv.is_point():
            tail = [a] + _finite_expansion(1 / (iv.lo - a))
            return _finish_rational(terms[:-1], tail, n_terms)
        # x -> 1/(x - a): reverse of the Taylor shift by a
        poly = poly.shifted(a).reversed()
        if poly.is_zero:
            raise NonIsolatingError("polynomial vanished during the transform")
        iv = RationalInterval(1 / (iv.hi - a), 1 / (iv.lo - a))
    return ContinuedFraction(terms=tuple(terms),
                             convergents=_convergents(terms), finite=False)


def _finite_expansion(x: Fraction) -> list[int]:
    """Complete continued-fraction expansion of an exact rational."""
    out: list[int] = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        frac = x - a
        if frac == 0:
            return out
        x = 1 / frac


def _finish_rational(emitted: list[int], tail: list[int],
                     n_terms: int) -> ContinuedFraction:
    """Close out an expansion whose remaining part turned out rational.

    The complete expansion is ``emitted + tail``.  If it fits the request
    it is returned whole with ``finite`` set and the exact value attached;
    otherwise the expansion is cut at ``n_terms`` like any other prefix.
    """
    full = list(emitted) + list(tail)
    if len(full) <= n_terms:
        convergents = _convergents(full)
        return ContinuedFraction(terms=tuple(full), convergents=convergents,
                                 finite=True, value=convergents[-1])
    cut = full[:n_terms]
    return ContinuedFraction(terms=tuple(cut), convergents=_convergents(cut),
                             finite=False)


def cfrac_cbrt(K, n_terms: int, minus_one: bool = False) -> ContinuedFraction:
    """Continued fraction of K**(1/3) (or K**(1/3) - 1 with ``minus_one``)
    for rational K > 1, via the exact cubic minimal polynomial."""
    K = parse_rational(K)
    if K <= 1:
        raise ValueError("K must exceed 1")
    poly = cbrt_minus_one_polynomial(K) if minus_one else cbrt_polynomial(K)
    roots = isolate_roots_in(poly, RationalInterval(0, max(K, Fraction(2))))
    if len(roots) != 1:
        raise NonIsolatingError("expected exactly one positive real root")
    return cfrac_algebraic(poly, roots[0], n_terms)


@dataclass(frozen=True)
class ComparisonRow:
    """One line of the estimate-vs-convergent comparison."""

    label: str
    value: Fraction
    error: RationalInterval

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "value": format_rational(self.value),
            "denominator": self.value.denominator,
            "error": certified_decimal(self.error, 10),
            "decimal": decimal_truncate(self.value, 10),
        }


@dataclass(frozen=True)
class CompareReport:
    """Scaling-derived estimates of K**(1/3) - 1 next to the continued
    fraction convergents of the same target."""

    K: Fraction
    target: RationalInterval
    estimates: tuple[ComparisonRow, ...]
    convergents: tuple[ComparisonRow, ...]
    cf_terms: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {
            "K": format_rational(self.K),
            "target_decimal": certified_decimal(self.target, 10),
            "cf_terms": list(self.cf_terms),
            "estimates": [r.to_json_dict() for r in self.estimates],
            "convergents": [r.to_json_dict() for r in self.convergents],
        }

    def to_text(self) -> str:
        k_str = format_rational(self.K)
        lines = [
            f"estimates of K**(1/3) - 1 for K = {k_str} "
            f"(target {certified_decimal(self.target, 10)})",
            "",
            "scaling-derived estimates:",
        ]
        width = max((len(format_rational(r.value)) for r in
                     self.estimates + self.convergents), default=8)
        for row in self.estimates + (None,) + self.convergents:
            if row is None:
                lines.append("")
                lines.append("continued-fraction convergents "
                             f"{list(self.cf_terms)}:")
                continue
            lines.append(
                f"  {row.label:<10} {format_rational(row.value):<{width}}  "
                f"= {decimal_truncate(row.value, 10):<13}  "
                f"error {certified_decimal(row.error, 10)}")
        return "\n".join(lines)


def compare_report(K, steps: int, cf_terms: int) -> CompareReport:
    """Pair the scaling-derived estimates of K**(1/3) - 1 with the
    continued-fraction convergents of the same target.

    The estimate from entry a is (K-1)*a (the affine cube-root estimate
    minus 1); each error is a certified interval against a refined
    enclosure of the true root.
    """
    K = parse_rational(K)
    table = cbrt_approximants(K, steps)
    target = RationalInterval(table.cbrt_enclosure.lo - 1,
                              table.cbrt_enclosure.hi - 1)
    estimates = []
    last = table.rows[-1]
    for row in table.rows:
        for label, a in (("a13", row.a13), ("a22", row.a22), ("a31", row.a31)):
            value = (K - 1) * a
            estimates.append(ComparisonRow(
                label=f"step {row.level} {label}",
                value=value,
                error=_error_interval(value, target),
            ))
    cf = cfrac_cbrt(K, cf_terms, minus_one=True)
    convergents = tuple(
        ComparisonRow(label=f"p{i}/q{i}", value=c,
                      error=_error_interval(c, target))
        for i, c in enumerate(cf.convergents)
    )
    return CompareReport(K=K, target=target, estimates=tuple(estimates),
                         convergents=convergents, cf_terms=cf.terms)
