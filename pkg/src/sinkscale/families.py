"""Closed-form doubly stochastic limits for the two-valued symmetric 3x3
families and the general block family.

Seven canonical 3x3 patterns (tags A1..A7) cover the symmetric matrices with
two distinct positive values K and 1 up to dilation and permutation
equivalence.  A1 is a one-step limit, A2-A4 are instances of the MBN block
family whose limit depends only on the ratio M*N/B**2, A5 adds one bordering
index, A6 is the circulant cube-root case, and A7 requires a degree-8 scaling
polynomial solved by exact root isolation.  Limits come with their scaling
vectors, exact entry values where a closed form exists in a quadratic or
cubic field, and certified rational enclosures otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    AmbiguousTripleError,
    DegenerateKError,
    NoPositiveTripleError,
    UnsupportedError,
)
from .matrices import Matrix
from .numerics import (
    CubicFieldElement,
    QuadraticSurd,
    RationalInterval,
    decimal_truncate,
    format_cubic,
    format_rational,
    format_surd,
    parse_rational,
    sqrt_bounds,
    sqrt_of_rational,
)
from .roots import Polynomial, isolate_roots_in, refine_root, sign_at_root

A_FAMILY_TAGS = ("A1", "A2", "A3", "A4", "A5", "A6", "A7")

SHAPE_BLOCK = "block"
SHAPE_BORDERED_PAIR = "bordered-pair"
SHAPE_CIRCULANT = "circulant"
SHAPE_FULL_SYMMETRIC = "full-symmetric"

RATIO_TO_INFINITY = "ratio-to-infinity"
RATIO_TO_ZERO = "ratio-to-zero"

_TIGHT = Fraction(1, 10 ** 44)


def format_scalar(value) -> str:
    if isinstance(value, QuadraticSurd):
        return format_surd(value)
    if isinstance(value, CubicFieldElement):
        return format_cubic(value)
    return format_rational(value)


@dataclass(frozen=True)
class EntryValue:
    """One limit value: exact field element when a closed form exists, a
    float always, and a certified rational enclosure when the exact value
    would need a nested radical."""

    numeric: float
    exact: object | None = None
    enclosure: RationalInterval | None = None

    def exact_str(self) -> str | None:
        if self.exact is None:
            return None
        return format_scalar(self.exact)

    def decimal(self, digits: int) -> str:
        if self.exact is not None:
            return decimal_truncate(self.exact, digits)
        if self.enclosure is not None:
            lo = decimal_truncate(self.enclosure.lo, digits)
            hi = decimal_truncate(self.enclosure.hi, digits)
            if lo == hi:
                return lo
        return decimal_truncate(self.numeric, digits)


def _entry_from_exact(value) -> EntryValue:
    if isinstance(value, (QuadraticSurd, CubicFieldElement)):
        return EntryValue(numeric=float(value), exact=value)
    value = Fraction(value)
    return EntryValue(numeric=float(value), exact=value)


def _entry_from_enclosure(iv: RationalInterval) -> EntryValue:
    return EntryValue(numeric=float(iv.midpoint), exact=None, enclosure=iv)


def _sqrt_interval(iv: RationalInterval) -> RationalInterval:
    return RationalInterval(sqrt_bounds(iv.lo, 22).lo, sqrt_bounds(iv.hi, 22).hi)


def _inv_pos(iv: RationalInterval) -> RationalInterval:
    if iv.lo <= 0:
        raise ValueError("interval is not strictly positive")
    return RationalInterval(1 / iv.hi, 1 / iv.lo)


def _scaling_entry(square) -> EntryValue:
    """Scaling coordinate from the exact value of its square.

    Exact when the root collapses to a Fraction or a surd; otherwise a
    certified enclosure of the nested radical.
    """
    if isinstance(square, QuadraticSurd) and square.is_rational:
        square = square.as_fraction()
    if isinstance(square, Fraction):
        return _entry_from_exact(sqrt_of_rational(square))
    if isinstance(square, QuadraticSurd):
        return _entry_from_enclosure(_sqrt_interval(square.enclosure(_TIGHT)))
    if isinstance(square, RationalInterval):
        return _entry_from_enclosure(_sqrt_interval(square))
    raise TypeError(f"cannot take scaling root of {type(square).__name__}")


@dataclass(frozen=True)
class FamilySpec:
    """Parameters naming a family instance: an A-tag with K, or MBN blocks."""

    tag: str
    K: Fraction | None = None
    k: int | None = None
    l: int | None = None
    M: Fraction | None = None
    B: Fraction | None = None
    N: Fraction | None = None

    def __post_init__(self):
        for name in ("K", "M", "B", "N"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, parse_rational(v))
        if self.tag in A_FAMILY_TAGS:
            if self.K is None or self.K <= 0:
                raise ValueError(f"family {self.tag} needs K > 0")
        elif self.tag == "MBN":
            if self.k is None or self.l is None or self.k < 1 or self.l < 1:
                raise ValueError("MBN needs integer block sizes k, l >= 1")
            object.__setattr__(self, "k", int(self.k))
            object.__setattr__(self, "l", int(self.l))
            for name in ("M", "B", "N"):
                v = getattr(self, name)
                if v is None or v <= 0:
                    raise ValueError(f"MBN needs {name} > 0")
        else:
            raise ValueError(f"unknown family tag {self.tag!r}")

    @classmethod
    def a_family(cls, tag: str, K) -> "FamilySpec":
        return cls(tag=tag, K=parse_rational(K))

    @classmethod
    def mbn(cls, k: int, l: int, M, B, N) -> "FamilySpec":
        return cls(tag="MBN", k=int(k), l=int(l), M=parse_rational(M),
                   B=parse_rational(B), N=parse_rational(N))

    @property
    def size(self) -> int:
        if self.tag == "MBN":
            return self.k + self.l
        return 3

    def matrix(self, mode: str = "rational") -> Matrix:
        """The canonical matrix this spec names."""
        if self.tag == "MBN":
            k = self.k
            n = k + self.l
            data = [[self.M if i < k and j < k
                     else self.N if i >= k and j >= k
                     else self.B
                     for j in range(n)] for i in range(n)]
        else:
            K, one = self.K, Fraction(1)
            patterns = {
                "A1": ((K, 1, 1), (1, K, 1), (1, 1, K)),
                "A2": ((K, 1, 1), (1, 1, 1), (1, 1, 1)),
                "A3": ((1, 1, 1), (1, K, K), (1, K, K)),
                "A4": ((1, K, K), (K, 1, 1), (K, 1, 1)),
                "A5": ((K, 1, 1), (1, K, 1), (1, 1, 1)),
                "A6": ((K, K, 1), (K, 1, 1), (1, 1, 1)),
                "A7": ((K, K, 1), (K, 1, 1), (1, 1, K)),
            }
            data = [[one if v == 1 else K for v in row]
                    for row in patterns[self.tag]]
        if mode == "float":
            return Matrix([[float(v) for v in row] for row in data], "float")
        return Matrix(data, "rational")


def _assemble(shape: str, entries: dict[str, EntryValue],
              k: int = 1, l: int = 2) -> Matrix:
    e = {name: v.numeric for name, v in entries.items()}
    if shape == SHAPE_BLOCK:
        n = k + l
        rows = [[e["a"] if i < k and j < k
                 else e["c"] if i >= k and j >= k
                 else e["b"]
                 for j in range(n)] for i in range(n)]
        return Matrix(rows, "float")
    if shape == SHAPE_BORDERED_PAIR:
        a, b, c, d = e["a"], e["b"], e["c"], e["d"]
        return Matrix([[a, b, c], [b, a, c], [c, c, d]], "float")
    if shape == SHAPE_CIRCULANT:
        a, b, c = e["a"], e["b"], e["c"]
        return Matrix([[a, b, c], [b, c, a], [c, a, b]], "float")
    if shape == SHAPE_FULL_SYMMETRIC:
        a, b, c, d, ev, f = (e[name] for name in "abcdef")
        return Matrix([[a, b, c], [b, d, ev], [c, ev, f]], "float")
    raise ValueError(f"unknown shape {shape!r}")


@dataclass(frozen=True)
class FamilyLimit:
    """A closed-form doubly stochastic limit with its scaling vector."""

    family: str
    shape: str
    entries: dict[str, EntryValue]
    scaling: tuple[EntryValue, ...]
    matrix: Matrix
    K: Fraction | None = None
    k: int = 1
    l: int = 2
    degenerate: bool = False

    def __post_init__(self):
        sums = list(self.matrix.row_sums()) + list(self.matrix.col_sums())
        worst = max(abs(s - 1.0) for s in sums)
        if worst > 1e-12 * self.matrix.rows:
            raise AssertionError(f"limit failed stochasticity check: {worst}")

    def entry(self, name: str) -> EntryValue:
        return self.entries[name]

    def to_json_dict(self, digits: int = 10) -> dict:
        return {
            "family": self.family,
            "shape": self.shape,
            "degenerate": self.degenerate,
            "entries": {
                name: {"exact": v.exact_str(), "numeric": v.decimal(digits)}
                for name, v in self.entries.items()
            },
            "scaling": [
                {"exact": v.exact_str(), "numeric": v.decimal(digits)}
                for v in self.scaling
            ],
            "matrix": self.matrix.to_json_dict(),
        }


def _exact_is_one(total) -> bool:
    if isinstance(total, (QuadraticSurd, CubicFieldElement)):
        return total == Fraction(1)
    return Fraction(total) == 1


def _check_exact_rows(rows) -> None:
    """Symbolic row-sum check; every row must sum to exactly 1."""
    for row in rows:
        total = row[0]
        for v in row[1:]:
            total = total + v
        if not _exact_is_one(total):
            raise AssertionError("exact row sum is not 1")


def _uniform_limit(family: str, n: int = 3, K=None,
                   k: int = 1, l: int | None = None) -> FamilyLimit:
    l = n - k if l is None else l
    entry = _entry_from_exact(Fraction(1, n))
    entries = {"a": entry, "b": entry, "c": entry}
    scaling = tuple(_scaling_entry(Fraction(1, n)) for _ in range(n))
    return FamilyLimit(
        family=family,
        shape=SHAPE_BLOCK,
        entries=entries,
        scaling=scaling,
        matrix=_assemble(SHAPE_BLOCK, entries, k, l),
        K=K,
        k=k,
        l=l,
        degenerate=True,
    )


def _require_k(K, allow_degenerate: bool, family: str) -> Fraction:
    K = parse_rational(K)
    if K <= 0:
        raise ValueError("K must be positive")
    if K == 1 and not allow_degenerate:
        raise DegenerateKError(f"{family} with K = 1 is the uniform matrix; "
                               "pass allow_degenerate to accept it")
    return K


def limit_A1(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[K,1,1],[1,K,1],[1,1,K]]: a single row scaling already
    lands on it, with a = K/(K+2) on the diagonal."""
    K = _require_k(K, allow_degenerate, "A1")
    if K == 1:
        return _uniform_limit("A1", K=K)
    a = K / (K + 2)
    b = 1 / (K + 2)
    entries = {
        "a": _entry_from_exact(a),
        "b": _entry_from_exact(b),
        "c": _entry_from_exact(b),
        "d": _entry_from_exact(a),
    }
    _check_exact_rows([[a, b, b], [b, a, b], [b, b, a]])
    x = _scaling_entry(1 / (K + 2))
    return FamilyLimit(
        family="A1",
        shape=SHAPE_BORDERED_PAIR,
        entries=entries,
        scaling=(x, x, x),
        matrix=_assemble(SHAPE_BORDERED_PAIR, entries),
        K=K,
    )


def limit_MBN(k: int, l: int, M, B, N) -> FamilyLimit:
    """Limit of the symmetric block matrix with k rows of (M..M B..B) and
    l rows of (B..B N..N).

    The limit depends on M, B, N only through the ratio R = M*N/B**2:
    a = 1/k + (n - sqrt(4*k*l*R + (k-l)**2)) / (2*k**2*(R-1)), then
    b = (1 - k*a)/l and c = (1 - k*b)/l.  R = 1 degenerates to the uniform
    matrix with exact 1/n entries.
    """
    k, l = int(k), int(l)
    if k < 1 or l < 1:
        raise ValueError("block sizes must be >= 1")
    M, B, N = parse_rational(M), parse_rational(B), parse_rational(N)
    if min(M, B, N) <= 0:
        raise ValueError("M, B, N must be positive")
    n = k + l
    ratio = M * N / (B * B)
    if ratio == 1:
        return _uniform_limit("MBN", n, k=k, l=l)
    root = sqrt_of_rational(4 * k * l * ratio + (k - l) ** 2)
    a = Fraction(1, k) + (n - root) / (2 * k * k * (ratio - 1))
    b = (1 - k * a) / l
    c = (1 - k * b) / l
    entries = {"a": _entry_from_exact(a), "b": _entry_from_exact(b),
               "c": _entry_from_exact(c)}
    _check_exact_rows([[a] * k + [b] * l, [b] * k + [c] * l])
    return FamilyLimit(
        family="MBN",
        shape=SHAPE_BLOCK,
        entries=entries,
        scaling=tuple([_scaling_entry(a / M)] * k + [_scaling_entry(c / N)] * l),
        matrix=_assemble(SHAPE_BLOCK, entries, k, l),
        k=k,
        l=l,
    )


def _retagged(limit: FamilyLimit, tag: str, K: Fraction) -> FamilyLimit:
    return FamilyLimit(
        family=tag,
        shape=limit.shape,
        entries=limit.entries,
        scaling=limit.scaling,
        matrix=limit.matrix,
        K=K,
        k=limit.k,
        l=limit.l,
        degenerate=limit.degenerate,
    )


def limit_A2(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[K,1,1],[1,1,1],[1,1,1]]: the MBN family with k=1, l=2 and
    ratio K."""
    K = _require_k(K, allow_degenerate, "A2")
    return _retagged(limit_MBN(1, 2, K, 1, 1), "A2", K)


def limit_A3(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[1,1,1],[1,K,K],[1,K,K]]: same ratio K as A2, hence exactly
    the same limit entries."""
    K = _require_k(K, allow_degenerate, "A3")
    return _retagged(limit_MBN(1, 2, 1, 1, K), "A3", K)


def limit_A4(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[1,K,K],[K,1,1],[K,1,1]]: the MBN family with ratio
    1/K**2."""
    K = _require_k(K, allow_degenerate, "A4")
    return _retagged(limit_MBN(1, 2, 1, K, 1), "A4", K)


def limit_A5(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[K,1,1],[1,K,1],[1,1,1]], shape [[a,b,c],[b,a,c],[c,c,d]].

    b and d lie in Q(sqrt(4K+5)); c = sqrt(b*d) would need a nested radical,
    so it is stored as a certified enclosure together with the exact
    identity (1-a-b)**2 = b*d that proves the rows sum to 1.
    """
    K = _require_k(K, allow_degenerate, "A5")
    if K == 1:
        return _uniform_limit("A5", K=K)
    root = sqrt_of_rational(4 * K + 5)
    b = (2 * K + 1 - root) / (2 * (K * K - 1))
    a = K * b
    d = (K + 2 - root) / (K - 1)
    bd = b * d
    one_minus = 1 - a - b
    if not _exact_is_one((one_minus * one_minus) / bd):
        raise AssertionError("A5 closed form failed c**2 = b*d")
    if not _exact_is_one(2 - (a + b) - (a + b) + d):
        raise AssertionError("A5 closed form failed 2c + d = 1")
    if isinstance(bd, QuadraticSurd) and bd.is_rational:
        bd = bd.as_fraction()
    if isinstance(bd, Fraction):
        c_entry = _entry_from_exact(sqrt_of_rational(bd))
    else:
        c_entry = _entry_from_enclosure(_sqrt_interval(bd.enclosure(_TIGHT)))
    entries = {
        "a": _entry_from_exact(a),
        "b": _entry_from_exact(b),
        "c": c_entry,
        "d": _entry_from_exact(d),
    }
    x = _scaling_entry(b)
    z = _scaling_entry(d)
    return FamilyLimit(
        family="A5",
        shape=SHAPE_BORDERED_PAIR,
        entries=entries,
        scaling=(x, x, z),
        matrix=_assemble(SHAPE_BORDERED_PAIR, entries),
        K=K,
    )


def limit_A6(K, allow_degenerate: bool = False) -> FamilyLimit:
    """Limit of [[K,K,1],[K,1,1],[1,1,1]]: circulant [[a,b,c],[b,c,a],[c,a,b]]
    with entries in Q(K**(1/3)).

    With t = K**(1/3): a = (t**2 - t)/(K - 1), b = (K - t**2)/(K - 1),
    c = (t - 1)/(K - 1).  The rows sum to 1 exactly in the field, and
    ((K-1)*c + 1)**3 = K recovers the defining cubic.
    """
    K = _require_k(K, allow_degenerate, "A6")
    if K == 1:
        return _uniform_limit("A6", K=K)
    den = K - 1
    a = CubicFieldElement(0, -1 / den, 1 / den, K)
    b = CubicFieldElement(K / den, 0, -1 / den, K)
    c = CubicFieldElement(-1 / den, 1 / den, 0, K)
    _check_exact_rows([[a, b, c]])
    t = den * c + 1
    if not _exact_is_one(t * t * t / K):
        raise AssertionError("A6 closed form failed ((K-1)c + 1)**3 = K")
    entries = {"a": _entry_from_exact(a), "b": _entry_from_exact(b),
               "c": _entry_from_exact(c)}
    # scaling x = y/t, y = 1/sqrt(1 + t + t**2), z = t*y with t = K**(1/3);
    # y**2 equals the entry c in the field, so these are degree-6 values
    # kept as certified enclosures
    y_box = _sqrt_interval(c.enclosure(_TIGHT))
    t_box = CubicFieldElement(0, 1, 0, K).enclosure(_TIGHT)
    x_box = y_box * _inv_pos(t_box)
    z_box = y_box * t_box
    scaling = tuple(_entry_from_enclosure(iv) for iv in (x_box, y_box, z_box))
    return FamilyLimit(
        family="A6",
        shape=SHAPE_CIRCULANT,
        entries=entries,
        scaling=scaling,
        matrix=_assemble(SHAPE_CIRCULANT, entries),
        K=K,
    )


def a7_octic(K) -> Polynomial:
    """Scaling polynomial for [[K,K,1],[K,1,1],[1,1,K]] in the variable y:
    (K-1)**3 y**8 + 3(K-1)**2 y**6 - (K-1)(2K-3) y**4 - (4K-1) y**2 + K."""
    K = parse_rational(K)
    return Polynomial([
        K,
        0,
        -(4 * K - 1),
        0,
        -(K - 1) * (2 * K - 3),
        0,
        3 * (K - 1) ** 2,
        0,
        (K - 1) ** 3,
    ])


def _a7_quartic(K: Fraction) -> Polynomial:
    """The octic after the even substitution u = y**2."""
    return Polynomial([
        K,
        -(4 * K - 1),
        -(K - 1) * (2 * K - 3),
        3 * (K - 1) ** 2,
        (K - 1) ** 3,
    ])


def _a7_z_numerator(K: Fraction) -> Polynomial:
    """Numerator of z(y): -(K-1)y**4 - 2y**2 + 1."""
    return Polynomial([1, 0, -2, 0, -(K - 1)])


@dataclass(frozen=True)
class A7Candidate:
    """One root of the octic in (0,1) with its back-substituted scaling."""

    y_enclosure: RationalInterval
    y: Fraction
    x: Fraction
    z: Fraction
    z_sign: int
    accepted: bool


def _a7_y_enclosure(octic: Polynomial, quartic: Polynomial,
                    u_iv: RationalInterval) -> RationalInterval:
    """Map an isolating u = y**2 enclosure to a certified y enclosure."""
    if u_iv.is_point():
        root = sqrt_of_rational(u_iv.lo)
        if isinstance(root, Fraction):
            return RationalInterval(root, root)
        box = sqrt_bounds(u_iv.lo, 36)
        inner = isolate_roots_in(octic, box)
        if len(inner) == 1:
            return inner[0]
        raise AssertionError("exact-square u-root did not map to one y-root")
    iv = u_iv
    for digits in range(6, 60, 6):
        iv = refine_root(quartic, iv, digits)
        if iv.is_point():
            return _a7_y_enclosure(octic, quartic, iv)
        if iv.lo <= 0:
            continue
        y_box = RationalInterval(sqrt_bounds(iv.lo, digits + 4).lo,
                                 sqrt_bounds(iv.hi, digits + 4).hi)
        inner = isolate_roots_in(octic, y_box)
        if len(inner) == 1:
            return inner[0]
    raise AssertionError("could not certify a y-enclosure from the u-root")


def a7_root_candidates(K, precision: int = 30) -> list[A7Candidate]:
    """All roots of the octic in (0,1) with back-substituted (x, y, z).

    x = y/((K-1)y**2 + 1) is positive at every root in (0,1), so acceptance
    reduces to the exact sign of z's numerator -(K-1)y**4 - 2y**2 + 1.
    """
    K = parse_rational(K)
    if K <= 0:
        raise ValueError("K must be positive")
    if K == 1:
        raise DegenerateKError("A7 with K = 1 is the uniform matrix")
    octic = a7_octic(K)
    quartic = _a7_quartic(K)
    z_num = _a7_z_numerator(K)
    shared = octic.squarefree_part().gcd(z_num)
    candidates = []
    for u_iv in isolate_roots_in(quartic, RationalInterval(0, 1)):
        if u_iv.is_point() and u_iv.lo == 0:
            continue  # y = 0 never scales
        y_iv = _a7_y_enclosure(octic, quartic, u_iv)
        y_iv = refine_root(octic, y_iv, precision)
        if y_iv.is_point():
            val = z_num(y_iv.lo)
            z_sign = (val > 0) - (val < 0)
        elif (not shared.is_zero and shared.degree >= 1
                and (shared(y_iv.lo) > 0) != (shared(y_iv.hi) > 0)):
            z_sign = 0  # z vanishes identically at this root
        else:
            z_sign = sign_at_root(z_num, octic, y_iv)
        y = y_iv.midpoint
        denom = (K - 1) * y * y + 1
        x = y / denom
        z = (-(K - 1) * y ** 4 - 2 * y * y + 1) / (y * denom)
        candidates.append(A7Candidate(
            y_enclosure=y_iv, y=y, x=x, z=z, z_sign=z_sign,
            accepted=z_sign > 0,
        ))
    return candidates


def limit_A7(K, allow_degenerate: bool = False, precision: int = 30) -> FamilyLimit:
    """Limit of [[K,K,1],[K,1,1],[1,1,K]], the full-symmetric shape
    [[a,b,c],[b,d,e],[c,e,f]] with a = K x**2, b = K x y, c = x z,
    d = y**2, e = y z, f = K z**2.

    The unique all-positive (x, y, z) triple is selected by the exact sign
    of z at each isolated octic root; zero or several survivors raise
    instead of guessing.  ``precision`` sets the refinement depth in decimal
    digits; entries carry certified interval enclosures of that quality.
    """
    K = parse_rational(K)
    if K == 1 and allow_degenerate:
        return _uniform_limit("A7", K=K)
    precision = max(precision, 30)
    candidates = a7_root_candidates(K, precision=precision)
    accepted = [c for c in candidates if c.accepted]
    if not accepted:
        raise NoPositiveTripleError(
            f"no all-positive scaling for K = {format_rational(K)}")
    if len(accepted) > 1:
        raise AmbiguousTripleError(
            f"{len(accepted)} all-positive scalings for K = {format_rational(K)}")
    octic = a7_octic(K)
    z_num = _a7_z_numerator(K)
    y_iv = accepted[0].y_enclosure
    target = Fraction(1, 10 ** (precision - 5))
    depth = precision
    while True:
        d_iv = (y_iv * y_iv).scaled(K - 1).shifted(1)
        n_iv = z_num.interval_eval(y_iv)
        if y_iv.lo > 0 and d_iv.lo > 0 and n_iv.lo > 0:
            x_iv = y_iv * _inv_pos(d_iv)
            z_iv = n_iv * _inv_pos(y_iv * d_iv)
            boxes = {
                "a": (x_iv * x_iv).scaled(K),
                "b": (x_iv * y_iv).scaled(K),
                "c": x_iv * z_iv,
                "d": y_iv * y_iv,
                "e": y_iv * z_iv,
                "f": (z_iv * z_iv).scaled(K),
            }
            if max(b.width for b in boxes.values()) <= target:
                break
        depth += 10
        y_iv = refine_root(octic, y_iv, depth)
    entries = {name: _entry_from_enclosure(iv) for name, iv in boxes.items()}
    scaling = tuple(_entry_from_enclosure(iv) for iv in (x_iv, y_iv, z_iv))
    return FamilyLimit(
        family="A7",
        shape=SHAPE_FULL_SYMMETRIC,
        entries=entries,
        scaling=scaling,
        matrix=_assemble(SHAPE_FULL_SYMMETRIC, entries),
        K=K,
    )


def family_limit(spec: FamilySpec, allow_degenerate: bool = False,
                 precision: int = 30) -> FamilyLimit:
    """Dispatch a family spec to its closed-form limit."""
    if spec.tag == "MBN":
        return limit_MBN(spec.k, spec.l, spec.M, spec.B, spec.N)
    if spec.tag == "A7":
        return limit_A7(spec.K, allow_degenerate=allow_degenerate,
                        precision=precision)
    handlers = {
        "A1": limit_A1, "A2": limit_A2, "A3": limit_A3, "A4": limit_A4,
        "A5": limit_A5, "A6": limit_A6,
    }
    return handlers[spec.tag](spec.K, allow_degenerate=allow_degenerate)


def asymptotic_limit(spec: FamilySpec, direction: str) -> Matrix:
    """Exact block limit as the family ratio runs to infinity or zero.

    For MBN the ratio is M*N/B**2; A2, A3 and A4 reduce to their MBN block
    form with k=1, l=2 (A4's ratio is 1/K**2, so K to infinity is the
    ratio-to-zero direction).  A1, A5 and A6 support ratio-to-infinity
    only, where their limits are permutation matrices; A7 has no closed
    asymptotic form.
    """
    if direction not in (RATIO_TO_INFINITY, RATIO_TO_ZERO):
        raise ValueError(f"unknown direction {direction!r}")
    tag = spec.tag
    if tag == "A7":
        raise UnsupportedError("A7 has no supported asymptotic closed form")
    one, zero = Fraction(1), Fraction(0)
    if tag in ("A1", "A5"):
        if direction != RATIO_TO_INFINITY:
            raise UnsupportedError(f"{tag} supports ratio-to-infinity only")
        return Matrix([[one, zero, zero], [zero, one, zero], [zero, zero, one]])
    if tag == "A6":
        if direction != RATIO_TO_INFINITY:
            raise UnsupportedError("A6 supports ratio-to-infinity only")
        return Matrix([[zero, one, zero], [one, zero, zero], [zero, zero, one]])
    k, l = (1, 2) if tag in ("A2", "A3", "A4") else (spec.k, spec.l)
    if direction == RATIO_TO_INFINITY:
        a, b, c = Fraction(1, k), zero, Fraction(1, l)
    elif k <= l:
        a, b, c = zero, Fraction(1, l), Fraction(l - k, l * l)
    else:
        # from the stochasticity constraints k*a + l*b = 1, k*b + l*c = 1
        # with a -> (k-l)/k**2 as the ratio vanishes
        a = Fraction(k - l, k * k)
        b = (1 - k * a) / l
        c = (1 - k * b) / l
    n = k + l
    rows = [[a if i < k and j < k
             else c if i >= k and j >= k
             else b
             for j in range(n)] for i in range(n)]
    return Matrix(rows, "rational")


@dataclass(frozen=True)
class TriangularForm:
    """Rational limit data for A2 when 8K+1 is an odd perfect square."""

    r: int
    a: Fraction
    b: Fraction
    c: Fraction
    limit: Matrix
    x: QuadraticSurd | Fraction
    y: QuadraticSurd | Fraction
    x_prime: tuple[Fraction, Fraction, Fraction]
    y_prime: tuple[Fraction, Fraction, Fraction]


def a2_rationality(K) -> TriangularForm | None:
    """Detect the triangular K where the A2 limit is rational.

    8K+1 = (2r+1)**2 forces K = r(r+1)/2, giving a = r/(r+2), b = 1/(r+2),
    c = (r+1)/(2(r+2)) and the rational scaling pair X' = diag(a/K, b, b),
    Y' = diag(1, (r+1)/2, (r+1)/2) with X' A Y' exactly doubly stochastic.
    Returns None when 8K+1 is not the square of an odd integer.
    """
    K = parse_rational(K)
    if K <= 0:
        raise ValueError("K must be positive")
    disc = 8 * K + 1
    if disc.denominator != 1:
        return None
    root = math.isqrt(disc.numerator)
    if root * root != disc.numerator or root % 2 == 0:
        return None
    r = (root - 1) // 2
    if r < 1:
        return None
    a = Fraction(r, r + 2)
    b = Fraction(1, r + 2)
    c = Fraction(r + 1, 2 * (r + 2))
    limit = Matrix([[a, b, b], [b, c, c], [b, c, c]], "rational")
    return TriangularForm(
        r=r, a=a, b=b, c=c, limit=limit,
        x=sqrt_of_rational(Fraction(2, (r + 1) * (r + 2))),
        y=sqrt_of_rational(Fraction(r + 1, 2 * (r + 2))),
        x_prime=(a / K, b, b),
        y_prime=(Fraction(1), Fraction(r + 1, 2), Fraction(r + 1, 2)),
    )
