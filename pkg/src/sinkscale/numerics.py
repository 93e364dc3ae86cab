"""Exact scalar arithmetic for scaling limits.

Rationals are stdlib ``fractions.Fraction``.  On top of those this module
provides quadratic surds p + q*sqrt(d), elements of the cubic field Q(K^(1/3)),
rational enclosures of algebraic numbers, and exact decimal rendering.  No
floating point is used on any exact path; numeric evaluation goes through
interval bisection with rational endpoints.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Sequence, Union

from .errors import NonIsolatingError

RationalLike = Union[int, Fraction]


def parse_rational(text) -> Fraction:
    """Parse "p/q", "p", or a decimal literal into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(r: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def split_square(n: int) -> tuple[int, int]:
    """Write n >= 0 as s*s*d with d square-free; return (s, d).

    Trial division; intended for the moderate radicands that arise from
    family parameters, not for cryptographic-size inputs.
    """
    if n < 0:
        raise ValueError("radicand must be nonnegative")
    if n == 0:
        return 0, 0
    s, d, m = 1, 1, n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    d *= m
    return s, d


def _icbrt(n: int) -> int:
    """Floor of the integer cube root of n >= 0."""
    if n < 0:
        raise ValueError("negative input")
    if n == 0:
        return 0
    r = round(n ** (1.0 / 3.0))
    while r ** 3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def rational_cbrt(r: Fraction) -> Fraction | None:
    """Exact cube root of a positive rational, or None if it is irrational."""
    if r <= 0:
        raise ValueError("positive rational required")
    cn = _icbrt(r.numerator)
    cd = _icbrt(r.denominator)
    if cn ** 3 == r.numerator and cd ** 3 == r.denominator:
        return Fraction(cn, cd)
    return None


class RationalInterval:
    """Closed interval [lo, hi] with rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, name, value):
        raise AttributeError("RationalInterval is immutable")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "RationalInterval") -> "RationalInterval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    def scaled(self, c) -> "RationalInterval":
        c = Fraction(c)
        if c >= 0:
            return RationalInterval(self.lo * c, self.hi * c)
        return RationalInterval(self.hi * c, self.lo * c)

    def shifted(self, c) -> "RationalInterval":
        c = Fraction(c)
        return RationalInterval(self.lo + c, self.hi + c)

    def __eq__(self, other):
        return (isinstance(other, RationalInterval)
                and self.lo == other.lo and self.hi == other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        return f"RationalInterval({self.lo}, {self.hi})"


def bisect_once(f: Callable[[Fraction], Fraction],
                interval: RationalInterval) -> RationalInterval:
    """One bisection step on a sign-changing f; the width strictly halves.

    Requires sign(f(lo)) * sign(f(hi)) <= 0.  An exact root at the midpoint
    collapses the enclosure to a point.
    """
    if interval.is_point():
        return interval
    flo = f(interval.lo)
    if flo == 0:
        return RationalInterval(interval.lo, interval.lo)
    fhi = f(interval.hi)
    if fhi == 0:
        return RationalInterval(interval.hi, interval.hi)
    if (flo > 0) == (fhi > 0):
        raise NonIsolatingError("no sign change over the enclosure")
    mid = interval.midpoint
    fm = f(mid)
    if fm == 0:
        return RationalInterval(mid, mid)
    if (fm > 0) == (fhi > 0):
        return RationalInterval(interval.lo, mid)
    return RationalInterval(mid, interval.hi)


def refine_to_width(f: Callable[[Fraction], Fraction],
                    interval: RationalInterval,
                    width: Fraction) -> RationalInterval:
    """Bisect until the enclosure is narrower than ``width``."""
    while interval.width > width:
        interval = bisect_once(f, interval)
    return interval


def sqrt_bounds(r: Fraction, digits: int) -> RationalInterval:
    """Certified rational bounds on sqrt(r), about 10**(-digits) wide."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    scale = 10 ** digits
    n, d = r.numerator, r.denominator
    lo = math.isqrt(n * scale * scale // d)
    ceil_scaled = -((-n * scale * scale) // d)
    hi = math.isqrt(ceil_scaled)
    if hi * hi < ceil_scaled:
        hi += 1
    return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))


def sqrt_enclosure(d: RationalLike, width: Fraction) -> RationalInterval:
    """Rational enclosure of sqrt(d) for d >= 0, no wider than ``width``."""
    d = Fraction(d)
    if d < 0:
        raise ValueError("negative radicand")
    if d == 0:
        return RationalInterval(0, 0)
    hi = max(d, Fraction(1))
    return refine_to_width(lambda t: t * t - d, RationalInterval(0, hi), width)


def cbrt_enclosure(k: Fraction, width: Fraction) -> RationalInterval:
    """Rational enclosure of k^(1/3) for k > 0, no wider than ``width``."""
    k = Fraction(k)
    if k <= 0:
        raise ValueError("positive radicand required")
    hi = max(k, Fraction(1))
    return refine_to_width(lambda t: t * t * t - k, RationalInterval(0, hi), width)


class QuadraticSurd:
    """Exact value p + q*sqrt(d) with rational p, q and square-free d.

    Construction canonicalises: square factors of the radicand move into q,
    and a perfect-square radicand collapses the value to a plain rational
    (stored with q = 0, d = 0).  Arithmetic is closed for a fixed d and for
    mixing with rationals; combining two distinct irrational radicands is an
    error rather than a silent approximation.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p, q=0, d=0):
        p, q = Fraction(p), Fraction(q)
        d = int(d)
        if d < 0:
            raise ValueError("negative radicand")
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        else:
            s, d0 = split_square(d)
            q *= s
            d = d0
            if d == 1:
                p += q
                q, d = Fraction(0), 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticSurd is immutable")

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational surd")
        return self.p

    def _coerce(self, other):
        if isinstance(other, QuadraticSurd):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticSurd(other)
        return None

    def _join_radicand(self, other: "QuadraticSurd") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise ValueError("mixed radicands: sqrt(%d) vs sqrt(%d)" % (self.d, other.d))

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_radicand(o)
        return QuadraticSurd(self.p + o.p, self.q + o.q, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self._join_radicand(o)
        p = self.p * o.p + self.q * o.q * d
        q = self.p * o.q + self.q * o.p
        return QuadraticSurd(p, q, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticSurd":
        if self.is_rational:
            return QuadraticSurd(1 / self.p)
        norm = self.p * self.p - self.q * self.q * self.d
        if norm == 0:
            raise ZeroDivisionError("zero surd")
        return QuadraticSurd(self.p / norm, -self.q / norm, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def sign(self) -> int:
        """Exact sign of the value: -1, 0, or 1."""
        if self.q == 0:
            return (self.p > 0) - (self.p < 0)
        if self.p == 0:
            return 1 if self.q > 0 else -1
        if self.p > 0 and self.q > 0:
            return 1
        if self.p < 0 and self.q < 0:
            return -1
        lhs, rhs = self.p * self.p, self.q * self.q * self.d
        if self.p > 0:  # q < 0: sign of p^2 - q^2 d
            return (lhs > rhs) - (lhs < rhs)
        return (rhs > lhs) - (rhs < lhs)

    def _compare(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        return (self - o).sign()

    def __lt__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._compare(other)
        return NotImplemented if c is None else c >= 0

    def enclosure(self, width: Fraction) -> RationalInterval:
        """Rational enclosure of the value, no wider than ``width``."""
        if self.q == 0:
            return RationalInterval(self.p, self.p)
        root = sqrt_enclosure(self.d, Fraction(width) / (2 * abs(self.q)))
        return root.scaled(self.q).shifted(self.p)

    def eval(self, precision: int) -> Fraction:
        """Rational within 10**(-precision) of the exact value."""
        if precision < 1:
            raise ValueError("precision must be a positive digit count")
        if self.q == 0:
            return self.p
        return self.enclosure(Fraction(1, 10 ** precision)).midpoint

    def __float__(self) -> float:
        return float(self.eval(25))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        if isinstance(other, QuadraticSurd):
            return (self.p, self.q, self.d) == (other.p, other.q, other.d)
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __repr__(self):
        return f"QuadraticSurd({self.p!r}, {self.q!r}, {self.d})"

    def __str__(self):
        return format_surd(self)


def sqrt_of_rational(r: Fraction):
    """sqrt(p/q) as a QuadraticSurd, collapsing to a Fraction when exact."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("negative radicand")
    if r == 0:
        return Fraction(0)
    s, d = split_square(r.numerator * r.denominator)
    coeff = Fraction(s, r.denominator)
    if d == 1:
        return coeff
    return QuadraticSurd(0, coeff, d)


def format_surd(s: QuadraticSurd) -> str:
    """Canonical textual form "(P + Q*sqrt(D))/R" with coprime integers."""
    if s.q == 0:
        return format_rational(s.p)
    r = math.lcm(s.p.denominator, s.q.denominator)
    pn = s.p.numerator * (r // s.p.denominator)
    qn = s.q.numerator * (r // s.q.denominator)
    g = math.gcd(math.gcd(abs(pn), abs(qn)), r)
    pn, qn, r = pn // g, qn // g, r // g
    op = "+" if qn >= 0 else "-"
    return f"({pn} {op} {abs(qn)}*sqrt({s.d}))/{r}"


class CubicFieldElement:
    """Exact element c0 + c1*t + c2*t^2 of Q(t) with t = K^(1/3), K rational > 0.

    If K is a perfect cube of a rational the construction degrades to the
    rational embedding: the value collapses to a single Fraction and
    ``degenerate_to_rational`` is set.
    """

    __slots__ = ("c0", "c1", "c2", "k", "degenerate_to_rational")

    def __init__(self, c0, c1=0, c2=0, k: RationalLike = 2):
        c0, c1, c2 = Fraction(c0), Fraction(c1), Fraction(c2)
        k = Fraction(k)
        if k <= 0:
            raise ValueError("K must be positive")
        root = rational_cbrt(k)
        degenerate = root is not None
        if degenerate and (c1 != 0 or c2 != 0):
            c0 = c0 + c1 * root + c2 * root * root
            c1 = c2 = Fraction(0)
        object.__setattr__(self, "c0", c0)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "degenerate_to_rational", degenerate)

    def __setattr__(self, name, value):
        raise AttributeError("CubicFieldElement is immutable")

    @property
    def is_rational(self) -> bool:
        return self.c1 == 0 and self.c2 == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError("irrational cubic field element")
        return self.c0

    def _coerce(self, other):
        if isinstance(other, CubicFieldElement):
            if other.k != self.k and not (other.is_rational or self.is_rational):
                raise ValueError("mixed cubic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return CubicFieldElement(other, 0, 0, self.k)
        return None

    def _join_k(self, other: "CubicFieldElement") -> Fraction:
        return other.k if self.is_rational else self.k

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CubicFieldElement(self.c0 + o.c0, self.c1 + o.c1,
                                 self.c2 + o.c2, self._join_k(o))

    __radd__ = __add__

    def __neg__(self):
        return CubicFieldElement(-self.c0, -self.c1, -self.c2, self.k)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self._join_k(o)
        a0, a1, a2 = self.c0, self.c1, self.c2
        b0, b1, b2 = o.c0, o.c1, o.c2
        # reduce with t^3 = K, t^4 = K t
        e0 = a0 * b0 + k * (a1 * b2 + a2 * b1)
        e1 = a0 * b1 + a1 * b0 + k * a2 * b2
        e2 = a0 * b2 + a1 * b1 + a2 * b0
        return CubicFieldElement(e0, e1, e2, k)

    __rmul__ = __mul__

    def inverse(self) -> "CubicFieldElement":
        if self.is_rational:
            if self.c0 == 0:
                raise ZeroDivisionError("zero cubic field element")
            return CubicFieldElement(1 / self.c0, 0, 0, self.k)
        k = self.k
        c0, c1, c2 = self.c0, self.c1, self.c2
        # solve (x0 + x1 t + x2 t^2)(c0 + c1 t + c2 t^2) = 1 over Q
        rows = [
            [c0, k * c2, k * c1, Fraction(1)],
            [c1, c0, k * c2, Fraction(0)],
            [c2, c1, c0, Fraction(0)],
        ]
        for col in range(3):
            pivot = next(r for r in range(col, 3) if rows[r][col] != 0)
            rows[col], rows[pivot] = rows[pivot], rows[col]
            head = rows[col][col]
            rows[col] = [v / head for v in rows[col]]
            for r in range(3):
                if r != col and rows[r][col] != 0:
                    factor = rows[r][col]
                    rows[r] = [v - factor * w for v, w in zip(rows[r], rows[col])]
        return CubicFieldElement(rows[0][3], rows[1][3], rows[2][3], k)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def enclosure(self, width: Fraction) -> RationalInterval:
        """Rational enclosure of the value, no wider than ``width``."""
        if self.is_rational:
            return RationalInterval(self.c0, self.c0)
        width = Fraction(width)
        w = width / 4
        while True:
            t = cbrt_enclosure(self.k, w)
            value = ((t.scaled(self.c2) + RationalInterval(self.c1, self.c1)) * t
                     + RationalInterval(self.c0, self.c0))
            if value.width <= width:
                return value
            w /= 2

    def eval(self, precision: int) -> Fraction:
        """Rational within 10**(-precision) of the exact value."""
        if precision < 1:
            raise ValueError("precision must be a positive digit count")
        if self.is_rational:
            return self.c0
        return self.enclosure(Fraction(1, 10 ** precision)).midpoint

    def __float__(self) -> float:
        return float(self.eval(25))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational and self.c0 == other
        if isinstance(other, CubicFieldElement):
            if self.is_rational and other.is_rational:
                return self.c0 == other.c0
            return (self.k == other.k
                    and (self.c0, self.c1, self.c2) == (other.c0, other.c1, other.c2))
        return NotImplemented

    def __hash__(self):
        if self.is_rational:
            return hash(self.c0)
        return hash((self.c0, self.c1, self.c2, self.k))

    def __repr__(self):
        return (f"CubicFieldElement({self.c0!r}, {self.c1!r}, "
                f"{self.c2!r}, k={self.k!r})")

    def __str__(self):
        return format_cubic(self)


def format_cubic(x: CubicFieldElement) -> str:
    """Human-readable form with K^(1/3)/K^(2/3) powers, e.g. "2^(1/3) - 1"."""
    if x.is_rational:
        return format_rational(x.c0)
    base = format_rational(x.k)
    if x.k.denominator != 1:
        base = f"({base})"
    powers = {2: f"{base}^(2/3)", 1: f"{base}^(1/3)", 0: ""}

    def term(coef: Fraction, power: int) -> str:
        if power == 0:
            return format_rational(abs(coef))
        mag = abs(coef)
        if mag == 1:
            return powers[power]
        c = format_rational(mag)
        if mag.denominator != 1:
            c = f"({c})"
        return f"{c}*{powers[power]}"

    def render(order) -> str:
        parts = []
        for power in order:
            coef = (x.c0, x.c1, x.c2)[power]
            if coef == 0:
                continue
            if not parts:
                sign = "-" if coef < 0 else ""
                parts.append(sign + term(coef, power))
            else:
                parts.append(("- " if coef < 0 else "+ ") + term(coef, power))
        return " ".join(parts) if parts else "0"

    out = render((2, 1, 0))
    if out.startswith("-") and any(c > 0 for c in (x.c0, x.c1, x.c2)):
        out = render((0, 1, 2))
    return out


Scalar = Union[Fraction, QuadraticSurd, CubicFieldElement]


def surd_eval(s: QuadraticSurd, precision: int) -> Fraction:
    """Rational within 10**(-precision) of the surd's exact value."""
    return s.eval(precision)


def cubic_eval(x: CubicFieldElement, precision: int) -> Fraction:
    """Rational within 10**(-precision) of the cubic field element's value."""
    return x.eval(precision)


def _poly_coefficients(p) -> tuple[Fraction, ...]:
    coeffs = getattr(p, "coefficients", p)
    return tuple(Fraction(c) for c in coeffs)


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def algebraic_floor(p, enclosure: RationalInterval) -> int:
    """Exact floor of the unique root of p inside ``enclosure``.

    Accepts a coefficient sequence (ascending) or any object with a
    ``coefficients`` attribute.  The enclosure must bracket the root with a
    sign change (or pin it exactly); integer candidates inside the interval
    are tested exactly, so a root that happens to be an integer terminates
    rather than oscillating.
    """
    coeffs = _poly_coefficients(p)
    f = lambda x: _horner(coeffs, x)
    lo, hi = enclosure.lo, enclosure.hi
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return math.floor(lo)
    if fhi == 0:
        return math.floor(hi)
    if (flo > 0) == (fhi > 0):
        raise NonIsolatingError("no sign change over the enclosure")
    while math.floor(lo) != math.floor(hi):
        mid = Fraction(math.floor(lo) + 1)
        if not (lo < mid < hi):
            mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return math.floor(mid)
        if (fm > 0) == (fhi > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return math.floor(lo)


def _exp10(a: Fraction) -> int:
    """Largest e with 10**e <= a, for a > 0."""
    e = len(str(a.numerator)) - len(str(a.denominator))
    ten = Fraction(10)
    while ten ** e > a:
        e -= 1
    while ten ** (e + 1) <= a:
        e += 1
    return e


def _truncate_fraction(x: Fraction, digits: int) -> str:
    if x == 0:
        return "0"
    sign = "-" if x < 0 else ""
    a = abs(x)
    e = _exp10(a)
    shift = digits - 1 - e
    scaled = a * Fraction(10) ** shift
    mantissa = str(scaled.numerator // scaled.denominator)
    point = e + 1  # digits before the decimal point
    if point >= digits:
        body = mantissa + "0" * (point - digits)
    elif point > 0:
        body = mantissa[:point] + "." + mantissa[point:]
    else:
        body = "0." + "0" * (-point) + mantissa
    return sign + body


def decimal_truncate(value, digits: int) -> str:
    """Exact decimal rendering truncated (not rounded) to ``digits``
    significant digits.

    Fractions and floats truncate exactly.  Surds and cubic field elements
    are enclosed tightly enough that both endpoints truncate identically, so
    the printed digits are certified.
    """
    if digits < 1:
        raise ValueError("digits must be positive")
    if isinstance(value, (int, Fraction)):
        return _truncate_fraction(Fraction(value), digits)
    if isinstance(value, float):
        return _truncate_fraction(Fraction(value), digits)
    if isinstance(value, (QuadraticSurd, CubicFieldElement)):
        if value.is_rational:
            return _truncate_fraction(value.as_fraction(), digits)
        precision = digits + 8
        while precision <= digits + 88:
            iv = value.enclosure(Fraction(1, 10 ** precision))
            if iv.lo > 0 or iv.hi < 0:
                lo_s = _truncate_fraction(iv.lo, digits)
                hi_s = _truncate_fraction(iv.hi, digits)
                if lo_s == hi_s:
                    return lo_s
            precision += 16
        # unreachable for irrational values; exact midpoint as last resort
        return _truncate_fraction(value.eval(digits + 8), digits)
    raise TypeError(f"cannot render {type(value).__name__}")
