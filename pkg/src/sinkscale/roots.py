"""Real-root isolation and refinement for polynomials over the rationals.

Isolation uses Descartes' rule of signs on the (0,1) Mobius transform with
recursive bisection; every step is exact Fraction arithmetic.  Enclosures are
certified against the square-free part of the polynomial: each returned
interval either pins a rational root exactly or brackets one simple root with
a sign change.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NonIsolatingError, ZeroPolynomialError
from .numerics import RationalInterval, bisect_once


class Polynomial:
    """Univariate polynomial with exact rational coefficients, ascending order."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial has no degree")
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coefficients) if i > 0)

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.coefficients[-1]
        return Polynomial(c / lead for c in self.coefficients)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coefficients)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial((other,))
        if not isinstance(other, Polynomial):
            return NotImplemented
        n = max(len(self.coefficients), len(other.coefficients))
        a = list(self.coefficients) + [Fraction(0)] * (n - len(self.coefficients))
        b = list(other.coefficients) + [Fraction(0)] * (n - len(other.coefficients))
        return Polynomial(x + y for x, y in zip(a, b))

    def __sub__(self, other):
        return self + (other * -1 if isinstance(other, Polynomial) else -other)

    def __neg__(self):
        return self * -1

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coefficients)
        den = other.coefficients
        quot = [Fraction(0)] * max(0, len(rem) - len(den) + 1)
        while len(rem) >= len(den) and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) < len(den):
                break
            factor = rem[-1] / den[-1]
            offset = len(rem) - len(den)
            quot[offset] = factor
            for i, c in enumerate(den):
                rem[offset + i] -= factor * c
            rem.pop()
        return Polynomial(quot), Polynomial(rem)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, other
        while not b.is_zero:
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero else a

    def squarefree_part(self) -> "Polynomial":
        if self.is_zero:
            raise ZeroPolynomialError("zero polynomial")
        g = self.gcd(self.derivative())
        if g.is_zero or g.degree == 0:
            return self.monic()
        return self.divmod(g)[0].monic()

    def shifted(self, a) -> "Polynomial":
        """p(x + a), exact Taylor shift."""
        a = Fraction(a)
        coeffs = list(self.coefficients)
        n = len(coeffs)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                coeffs[j] += a * coeffs[j + 1]
        return Polynomial(coeffs)

    def arg_scaled(self, c) -> "Polynomial":
        """p(c * x)."""
        c = Fraction(c)
        power = Fraction(1)
        out = []
        for coef in self.coefficients:
            out.append(coef * power)
            power *= c
        return Polynomial(out)

    def reversed(self) -> "Polynomial":
        """x**n * p(1/x) on the stored coefficient window."""
        return Polynomial(reversed(self.coefficients))

    def interval_eval(self, box: RationalInterval) -> RationalInterval:
        """Interval Horner bound for p over a rational box."""
        acc = RationalInterval(0, 0)
        for c in reversed(self.coefficients):
            acc = acc * box + RationalInterval(c, c)
        return acc

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"Polynomial({list(self.coefficients)!r})"


def sign_variations(coefficients: Sequence[Fraction]) -> int:
    """Number of sign changes in a coefficient sequence, zeros skipped."""
    signs = [c > 0 for c in coefficients if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_positive_bound(p: Polynomial) -> int:
    """Descartes bound on positive real roots: count >= roots, same parity."""
    if p.is_zero:
        raise ZeroPolynomialError("zero polynomial")
    return sign_variations(p.coefficients)


def _variations_on_unit(p: Polynomial) -> int:
    """Sign variations of (1+x)^n p(1/(1+x)): bounds the roots of p in (0,1)."""
    return sign_variations(p.reversed().shifted(1).coefficients)


def _isolate_bisect(p: Polynomial, lo: Fraction, hi: Fraction,
                    depth: int) -> list[RationalInterval]:
    if depth > 128:  # squarefree input separates far earlier
        raise NonIsolatingError("isolation did not terminate")
    local = p.shifted(lo).arg_scaled(hi - lo)  # roots in (lo,hi) -> (0,1)
    v = _variations_on_unit(local)
    if v == 0:
        return []
    if v == 1:
        return [RationalInterval(lo, hi)]
    mid = (lo + hi) / 2
    found: list[RationalInterval] = []
    found.extend(_isolate_bisect(p, lo, mid, depth + 1))
    if p(mid) == 0:
        found.append(RationalInterval(mid, mid))
    found.extend(_isolate_bisect(p, mid, hi, depth + 1))
    return found


def isolate_roots_in(p: Polynomial, interval: RationalInterval) -> list[RationalInterval]:
    """Disjoint rational enclosures, one per real root of p in the interval.

    Treats the interval as closed; endpoint roots come back as point
    enclosures.  Multiple roots are handled by deflating to the square-free
    part first, so every non-point enclosure carries a strict sign change of
    that square-free polynomial.
    """
    if p.is_zero:
        raise ZeroPolynomialError("zero polynomial")
    ps = p.squarefree_part()
    out: list[RationalInterval] = []
    if ps(interval.lo) == 0:
        out.append(RationalInterval(interval.lo, interval.lo))
    if interval.is_point():
        return out
    out.extend(_isolate_bisect(ps, interval.lo, interval.hi, 0))
    if ps(interval.hi) == 0:
        out.append(RationalInterval(interval.hi, interval.hi))
    return sorted(out, key=lambda iv: (iv.lo, iv.hi))


def refine_root(p: Polynomial, enclosure: RationalInterval,
                digits: int) -> RationalInterval:
    """Shrink an isolating enclosure below 10**(-digits) width by bisection.

    Works against the square-free part so sign changes stay strict; an exact
    rational root collapses the enclosure to a point.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    if p.is_zero:
        raise ZeroPolynomialError("zero polynomial")
    ps = p.squarefree_part()
    target = Fraction(1, 10 ** digits)
    iv = enclosure
    if iv.is_point():
        if ps(iv.lo) != 0:
            raise NonIsolatingError("point enclosure is not a root")
        return iv
    flo, fhi = ps(iv.lo), ps(iv.hi)
    if flo == 0:
        return RationalInterval(iv.lo, iv.lo)
    if fhi == 0:
        return RationalInterval(iv.hi, iv.hi)
    if (flo > 0) == (fhi > 0):
        raise NonIsolatingError("enclosure does not bracket a root")
    while iv.width > target and not iv.is_point():
        iv = bisect_once(ps, iv)
    return iv


def sign_at_root(q: Polynomial, p: Polynomial,
                 enclosure: RationalInterval) -> int:
    """Exact sign of q at the root of p isolated by ``enclosure``.

    Requires q to be nonzero at that root (e.g. gcd(p, q) has no root
    there); the enclosure is refined until an interval bound on q excludes
    zero, which then certifies the sign.
    """
    ps = p.squarefree_part()
    iv = enclosure
    for _ in range(4096):
        if iv.is_point():
            val = q(iv.lo)
            if val == 0:
                raise NonIsolatingError("q vanishes at the root")
            return 1 if val > 0 else -1
        bound = q.interval_eval(iv)
        if bound.lo > 0:
            return 1
        if bound.hi < 0:
            return -1
        iv = bisect_once(ps, iv)
    raise NonIsolatingError("sign not separated; q may vanish at the root")
