"""Dilation and permutation equivalence of positive matrices.

Two positive matrices A and B are equivalent when B = lam*P*A*Q for a
positive scalar lam and permutation matrices P, Q.  Every positive symmetric
3x3 matrix with at most two distinct values is equivalent to one of the
seven canonical family patterns (or to the uniform matrix), and scaling
limits transport along the permutation part of the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatchError,
    NoClassError,
    NonPositiveEntryError,
    NotDoublyStochasticError,
    NotSymmetricError,
    NotTwoValuedError,
)
from .families import A_FAMILY_TAGS, FamilySpec
from .matrices import (
    Matrix,
    Permutation,
    all_permutations,
    default_tolerance,
    is_doubly_stochastic,
    left_permuted,
    perm_compose,
    right_permuted,
)
from .numerics import format_rational

UNIFORM = "Uniform"

_REL_TOL = 1e-12


def _values_close(u, v) -> bool:
    return abs(u - v) <= _REL_TOL * max(1.0, abs(u), abs(v))


def _matrices_match(a: Matrix, b: Matrix) -> bool:
    if (a.rows, a.cols) != (b.rows, b.cols):
        return False
    if a.mode == "rational" and b.mode == "rational":
        return all(a[(i, j)] == b[(i, j)]
                   for i in range(a.rows) for j in range(a.cols))
    return all(_values_close(float(a[(i, j)]), float(b[(i, j)]))
               for i in range(a.rows) for j in range(a.cols))


def _format_value(v) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    return repr(v)


@dataclass(frozen=True)
class EquivalenceWitness:
    """A proof that lam * P * A * Q equals a canonical family matrix."""

    lam: object
    row_perm: Permutation
    col_perm: Permutation
    family: str
    K: object

    def apply(self, m: Matrix) -> Matrix:
        """lam * P * m * Q."""
        moved = left_permuted(self.row_perm, right_permuted(m, self.col_perm))
        return moved.dilated(self.lam)

    def invert(self) -> "EquivalenceWitness":
        """The witness carrying the canonical matrix back to the input."""
        return EquivalenceWitness(
            lam=1 / self.lam,
            row_perm=self.row_perm.inverse(),
            col_perm=self.col_perm.inverse(),
            family=self.family,
            K=self.K,
        )

    def compose(self, then: "EquivalenceWitness") -> "EquivalenceWitness":
        """Witness equivalent to applying ``self`` first, ``then`` second."""
        return EquivalenceWitness(
            lam=self.lam * then.lam,
            row_perm=perm_compose(then.row_perm, self.row_perm),
            col_perm=perm_compose(self.col_perm, then.col_perm),
            family=then.family,
            K=then.K,
        )

    def to_json_dict(self) -> dict:
        return {
            "lambda": _format_value(self.lam),
            "P": self.row_perm.one_based(),
            "Q": self.col_perm.one_based(),
            "family": self.family,
            "K": _format_value(self.K),
        }


def canonical_matrix(tag: str, K, mode: str = "rational") -> Matrix:
    """The canonical two-valued matrix for a family tag."""
    return FamilySpec.a_family(tag, K).matrix(mode)


def _distinct_values(m: Matrix) -> list:
    flat = [m[(i, j)] for i in range(m.rows) for j in range(m.cols)]
    if m.mode == "rational":
        return sorted(set(flat))
    groups: list[list[float]] = []
    for v in sorted(float(x) for x in flat):
        if groups and _values_close(groups[-1][-1], v):
            groups[-1].append(v)
        else:
            groups.append([v])
    return [g[0] for g in groups]


def _count_matching(m: Matrix, value) -> int:
    total = 0
    for i in range(m.rows):
        for j in range(m.cols):
            entry = m[(i, j)]
            if m.mode == "rational":
                total += entry == value
            else:
                total += _values_close(float(entry), value)
    return total


def classify_two_valued(m: Matrix) -> EquivalenceWitness:
    """Classify a positive two-valued 3x3 matrix into a canonical family.

    The majority value (it occurs at least five of nine times) is scaled to
    1 by lam = 1/majority, so K = minority/majority; all 36 permutation
    pairs are searched against the family patterns in a fixed order
    (families A1..A7 outer, then P, then Q in lexicographic order), and the
    first witness found is returned.  A single-valued matrix classifies as
    Uniform with K = 1.
    """
    if m.rows != 3 or m.cols != 3:
        raise DimensionMismatchError("classification supports 3x3 matrices only")
    if not m.is_positive:
        raise NonPositiveEntryError("classification needs strictly positive entries")
    values = _distinct_values(m)
    identity = Permutation.identity(3)
    if len(values) == 1:
        v = values[0]
        one = Fraction(1) if m.mode == "rational" else 1.0
        return EquivalenceWitness(lam=1 / v, row_perm=identity,
                                  col_perm=identity, family=UNIFORM, K=one)
    if len(values) != 2:
        raise NotTwoValuedError(
            f"matrix has {len(values)} distinct values; classification "
            "needs at most two")
    counts = [(_count_matching(m, v), v) for v in values]
    counts.sort(reverse=True)
    majority, minority = counts[0][1], counts[1][1]
    lam = 1 / majority
    K = minority / majority
    scaled = m.dilated(lam)
    perms = list(all_permutations(3))
    for tag in A_FAMILY_TAGS:
        pattern = canonical_matrix(tag, K, m.mode)
        for p in perms:
            for q in perms:
                moved = left_permuted(p, right_permuted(scaled, q))
                if _matrices_match(moved, pattern):
                    return EquivalenceWitness(lam=lam, row_perm=p,
                                              col_perm=q, family=tag, K=K)
    tol = 0.0 if m.mode == "rational" else _REL_TOL
    if not m.is_symmetric(tol):
        raise NotSymmetricError(
            "matrix is not symmetric and matches no symmetric family pattern")
    raise NoClassError(
        "symmetric two-valued 3x3 matrix matched no family; this signals a bug")


def transport_limit(s: Matrix, witness: EquivalenceWitness,
                    tol: float | None = None) -> Matrix:
    """Move a doubly stochastic limit along an equivalence witness.

    Dilation never changes a scaling limit, so only the permutation part
    acts: the result is P*S*Q, which is again doubly stochastic.
    """
    if tol is None:
        tol = default_tolerance(s)
    if not is_doubly_stochastic(s, tol):
        raise NotDoublyStochasticError("transport requires a doubly stochastic input")
    return left_permuted(witness.row_perm, right_permuted(s, witness.col_perm))
