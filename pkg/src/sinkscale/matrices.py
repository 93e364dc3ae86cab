"""Dense matrices over exact rationals or floats, with the row/column
scaling primitives and permutation actions used throughout the package.

A matrix carries a scalar mode: "rational" entries are Fractions and all
operations on them are exact; "float" entries are IEEE doubles.  Row/column
sum helpers accept signed entries (they are check-only); the scaling
operators insist on strictly positive entries.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .errors import (
    DimensionMismatchError,
    MatrixFormatError,
    ModeError,
    NonPositiveEntryError,
    NotSquareError,
)
from .numerics import format_rational, parse_rational

Mode = Literal["rational", "float"]

_MODES = ("rational", "float")


def _coerce_entry(value, mode: Mode):
    if mode == "rational":
        if isinstance(value, float):
            raise ModeError("float entry in rational mode; pass a string or Fraction")
        return parse_rational(value)
    return float(value)


class Matrix:
    """Immutable dense matrix with a uniform scalar mode."""

    __slots__ = ("entries", "rows", "cols", "mode")

    def __init__(self, entries: Iterable[Iterable], mode: Mode = "rational"):
        if mode not in _MODES:
            raise MatrixFormatError(f"unknown mode {mode!r}")
        try:
            data = tuple(tuple(_coerce_entry(v, mode) for v in row) for row in entries)
        except (ValueError, TypeError) as exc:
            raise MatrixFormatError(f"bad matrix entry: {exc}") from exc
        if not data or not data[0]:
            raise MatrixFormatError("matrix must be nonempty")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise MatrixFormatError("ragged rows")
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "mode", mode)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __getitem__(self, key) -> object:
        i, j = key
        return self.entries[i][j]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_positive(self) -> bool:
        return all(v > 0 for row in self.entries for v in row)

    def is_symmetric(self, tol: float = 0.0) -> bool:
        if not self.is_square:
            return False
        for i in range(self.rows):
            for j in range(i + 1, self.cols):
                a, b = self.entries[i][j], self.entries[j][i]
                if self.mode == "rational" or tol == 0.0:
                    if a != b:
                        return False
                elif abs(a - b) > tol * max(abs(a), abs(b), 1.0):
                    return False
        return True

    def row_sums(self) -> tuple:
        return tuple(sum(row) for row in self.entries)

    def col_sums(self) -> tuple:
        return tuple(sum(row[j] for row in self.entries) for j in range(self.cols))

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.entries), self.mode)

    def dilated(self, lam) -> "Matrix":
        """Entrywise multiple lam * A, staying in the matrix's mode."""
        lam = _coerce_entry(lam, self.mode)
        return Matrix(((v * lam for v in row) for row in self.entries), self.mode)

    def to_float(self) -> "Matrix":
        if self.mode == "float":
            return self
        return Matrix(((float(v) for v in row) for row in self.entries), "float")

    def approx_equal(self, other: "Matrix", tol: float) -> bool:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(
            abs(float(a) - float(b)) <= tol
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def max_abs_difference(self, other: "Matrix") -> float:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatchError("shape mismatch")
        return max(
            abs(float(a) - float(b))
            for ra, rb in zip(self.entries, other.entries)
            for a, b in zip(ra, rb)
        )

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.mode == other.mode and self.entries == other.entries)

    def __hash__(self):
        return hash((self.mode, self.entries))

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.entries]!r}, mode={self.mode!r})"

    # -- serialization -----------------------------------------------------

    def entry_strings(self) -> list[list[str]]:
        if self.mode == "rational":
            return [[format_rational(v) for v in row] for row in self.entries]
        return [[repr(v) for v in row] for row in self.entries]

    def to_json_dict(self) -> dict:
        entries: list[list] = (
            self.entry_strings() if self.mode == "rational"
            else [list(row) for row in self.entries]
        )
        return {"rows": self.rows, "cols": self.cols, "mode": self.mode,
                "entries": entries}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "Matrix":
        try:
            mode = payload["mode"]
            entries = payload["entries"]
            declared = (int(payload["rows"]), int(payload["cols"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MatrixFormatError(f"bad matrix JSON: {exc}") from exc
        m = cls(entries, mode)
        if (m.rows, m.cols) != declared:
            raise MatrixFormatError("declared shape does not match entries")
        return m

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.mode}"]
        lines.extend(" ".join(row) for row in self.entry_strings())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise MatrixFormatError("empty matrix text")
        header = lines[0].split()
        if len(header) != 3:
            raise MatrixFormatError('header must be "rows cols mode"')
        try:
            rows, cols = int(header[0]), int(header[1])
        except ValueError as exc:
            raise MatrixFormatError("non-integer dimensions in header") from exc
        mode = header[2]
        if mode not in _MODES:
            raise MatrixFormatError(f"unknown mode {mode!r}")
        if len(lines) - 1 != rows:
            raise MatrixFormatError(f"expected {rows} data rows, got {len(lines) - 1}")
        data = []
        for ln in lines[1:]:
            cells = ln.split()
            if len(cells) != cols:
                raise MatrixFormatError(f"expected {cols} entries per row")
            data.append(cells)
        return cls(data, mode)

    @classmethod
    def from_json_text(cls, text: str) -> "Matrix":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixFormatError(f"bad JSON: {exc}") from exc
        return cls.from_json_dict(payload)


def parse_matrix(text: str) -> Matrix:
    """Parse either the whitespace text format or the JSON object format."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return Matrix.from_json_text(text)
    return Matrix.from_text(text)


def default_tolerance(m: Matrix) -> float:
    """Default doubly-stochastic tolerance: exact for rationals, else scaled
    to accumulated roundoff over a row."""
    if m.mode == "rational":
        return 0.0
    return 1e-12 * max(m.rows, m.cols)


def is_doubly_stochastic(m: Matrix, tol: float | None = None) -> bool:
    """True when all row and column sums are within tol of 1 (square only)."""
    if not m.is_square:
        return False
    if tol is None:
        tol = default_tolerance(m)
    one = Fraction(1) if m.mode == "rational" else 1.0
    sums = list(m.row_sums()) + list(m.col_sums())
    return all(abs(s - one) <= tol for s in sums)


class DiagonalScaling:
    """Diagonal matrix stored as its diagonal; composes componentwise."""

    __slots__ = ("values",)

    def __init__(self, values: Iterable):
        object.__setattr__(self, "values", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("DiagonalScaling is immutable")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def compose(self, other: "DiagonalScaling") -> "DiagonalScaling":
        if len(self) != len(other):
            raise DimensionMismatchError("diagonal size mismatch")
        return DiagonalScaling(a * b for a, b in zip(self.values, other.values))

    def inverse(self) -> "DiagonalScaling":
        return DiagonalScaling(1 / v for v in self.values)

    def apply_left(self, m: Matrix) -> Matrix:
        """diag(values) @ m: scales row i by values[i]."""
        if len(self) != m.rows:
            raise DimensionMismatchError("diagonal does not match row count")
        return Matrix(
            ((v * x for x in row) for v, row in zip(self.values, m.entries)),
            m.mode,
        )

    def apply_right(self, m: Matrix) -> Matrix:
        """m @ diag(values): scales column j by values[j]."""
        if len(self) != m.cols:
            raise DimensionMismatchError("diagonal does not match column count")
        return Matrix(
            ((x * v for x, v in zip(row, self.values)) for row in m.entries),
            m.mode,
        )

    @classmethod
    def identity(cls, n: int, mode: Mode = "rational") -> "DiagonalScaling":
        one = Fraction(1) if mode == "rational" else 1.0
        return cls(one for _ in range(n))

    def __eq__(self, other):
        return isinstance(other, DiagonalScaling) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"DiagonalScaling({list(self.values)!r})"


def row_scale(m: Matrix) -> tuple[DiagonalScaling, Matrix]:
    """Scale each row to sum 1; returns (X, X @ A).  Entries must be > 0."""
    if not m.is_positive:
        raise NonPositiveEntryError("row scaling needs strictly positive entries")
    sums = m.row_sums()
    x = DiagonalScaling(1 / s for s in sums)
    return x, x.apply_left(m)


def col_scale(m: Matrix) -> tuple[DiagonalScaling, Matrix]:
    """Scale each column to sum 1; returns (Y, A @ Y).  Entries must be > 0."""
    if not m.is_positive:
        raise NonPositiveEntryError("column scaling needs strictly positive entries")
    sums = m.col_sums()
    y = DiagonalScaling(1 / s for s in sums)
    return y, y.apply_right(m)


class Permutation:
    """Bijection of {0..n-1}; serialized one-based to match written
    conventions for permutation matrices."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Sequence[int]):
        mapping = tuple(int(v) for v in mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise ValueError(f"not a permutation of 0..{len(mapping) - 1}: {mapping}")
        object.__setattr__(self, "mapping", mapping)

    def __setattr__(self, name, value):
        raise AttributeError("Permutation is immutable")

    def __len__(self):
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def from_one_based(cls, values: Sequence[int]) -> "Permutation":
        return cls([v - 1 for v in values])

    def one_based(self) -> list[int]:
        return [v + 1 for v in self.mapping]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Permutation(inv)

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.mapping))

    def matrix(self, mode: Mode = "rational") -> Matrix:
        """P_sigma with entry (i, j) = 1 exactly when j = sigma(i)."""
        one = Fraction(1) if mode == "rational" else 1.0
        zero = Fraction(0) if mode == "rational" else 0.0
        n = len(self.mapping)
        return Matrix(
            ((one if self.mapping[i] == j else zero for j in range(n))
             for i in range(n)),
            mode,
        )

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.mapping == other.mapping

    def __hash__(self):
        return hash(self.mapping)

    def __repr__(self):
        return f"Permutation({list(self.mapping)!r})"


def perm_compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Permutation whose matrix is P_sigma @ P_tau, i.e. i -> tau(sigma(i))."""
    if len(sigma) != len(tau):
        raise DimensionMismatchError("permutation size mismatch")
    return Permutation(tau(sigma(i)) for i in range(len(sigma)))


def perm_matrix_apply(sigma: Permutation, m: Matrix,
                      side: Literal["left", "right"]) -> Matrix:
    """Apply a permutation to a matrix.

    side="left" forms P_sigma @ A (row i of the result is row sigma(i) of A);
    side="right" forms A @ P_sigma^(-1) (column j of the result is column
    sigma(j) of A).
    """
    if side == "left":
        if len(sigma) != m.rows:
            raise DimensionMismatchError("permutation does not match row count")
        return Matrix((m.entries[sigma(i)] for i in range(m.rows)), m.mode)
    if side == "right":
        if len(sigma) != m.cols:
            raise DimensionMismatchError("permutation does not match column count")
        return Matrix(
            ((row[sigma(j)] for j in range(m.cols)) for row in m.entries),
            m.mode,
        )
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def left_permuted(sigma: Permutation, m: Matrix) -> Matrix:
    """P_sigma @ A."""
    return perm_matrix_apply(sigma, m, "left")


def right_permuted(m: Matrix, sigma: Permutation) -> Matrix:
    """A @ P_sigma."""
    return perm_matrix_apply(sigma.inverse(), m, "right")


def all_permutations(n: int):
    """All permutations of {0..n-1} in lexicographic mapping order."""
    for mapping in itertools.permutations(range(n)):
        yield Permutation(mapping)


def require_square(m: Matrix) -> None:
    if not m.is_square:
        raise NotSquareError(f"{m.rows}x{m.cols} matrix is not square")
