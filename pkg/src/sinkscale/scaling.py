"""Alternate row/column scaling: traces, limits, and symmetric scalings.

A positive square matrix scaled alternately to row-stochastic then
column-stochastic form converges to its unique doubly stochastic limit
X A Y.  Step counting is elementary: step 1 is the first row scaling,
step 2 the first column scaling, and so on.  Rational mode is exact and
never "converges"; use a fixed step count there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ModeError, NonPositiveEntryError, NotSquareError, NotSymmetricError
from .matrices import DiagonalScaling, Matrix, col_scale, require_square, row_scale

ROW = "row"
COLUMN = "column"


def residual(m: Matrix):
    """Max deviation of any row or column sum from 1."""
    one = Fraction(1) if m.mode == "rational" else 1.0
    return max(abs(s - one) for s in (*m.row_sums(), *m.col_sums()))


@dataclass(frozen=True)
class IterationTrace:
    """Snapshots of every elementary scaling step applied to ``initial``.

    ``snapshot(step)`` is 1-based; ``accumulated_x`` and ``accumulated_y``
    are the componentwise products of all row and column scalings taken, so
    accumulated_x @ initial @ accumulated_y equals the last snapshot
    (exactly so in rational mode).
    """

    initial: Matrix
    snapshots: tuple[Matrix, ...]
    step_kinds: tuple[str, ...]
    step_scalings: tuple[DiagonalScaling, ...]
    accumulated_x: DiagonalScaling
    accumulated_y: DiagonalScaling

    def snapshot(self, step: int) -> Matrix:
        if not 1 <= step <= len(self.snapshots):
            raise IndexError(f"step {step} outside 1..{len(self.snapshots)}")
        return self.snapshots[step - 1]

    @property
    def steps(self) -> int:
        return len(self.snapshots)

    def to_json_dict(self) -> dict:
        def sums_strings(values) -> list[str]:
            if self.initial.mode == "rational":
                from .numerics import format_rational
                return [format_rational(v) for v in values]
            return [repr(v) for v in values]

        steps = []
        for idx, (snap, kind) in enumerate(zip(self.snapshots, self.step_kinds), start=1):
            steps.append({
                "index": idx,
                "kind": kind,
                "entries": snap.entry_strings(),
                "row_sums": sums_strings(snap.row_sums()),
                "col_sums": sums_strings(snap.col_sums()),
            })
        return {"mode": self.initial.mode, "steps": steps}


def sinkhorn_iterate(m: Matrix, steps: int) -> IterationTrace:
    """Exactly ``steps`` elementary scalings, row first, alternating.

    Works in both modes; in rational mode every snapshot is exact, with row
    (resp. column) sums identically 1 after a row (resp. column) step.
    """
    require_square(m)
    if not m.is_positive:
        raise NonPositiveEntryError("scaling needs strictly positive entries")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    x = DiagonalScaling.identity(m.rows, m.mode)
    y = DiagonalScaling.identity(m.cols, m.mode)
    snapshots: list[Matrix] = []
    kinds: list[str] = []
    scalings: list[DiagonalScaling] = []
    current = m
    for step in range(steps):
        if step % 2 == 0:
            d, current = row_scale(current)
            x = x.compose(d)
            kinds.append(ROW)
        else:
            d, current = col_scale(current)
            y = y.compose(d)
            kinds.append(COLUMN)
        snapshots.append(current)
        scalings.append(d)
    return IterationTrace(
        initial=m,
        snapshots=tuple(snapshots),
        step_kinds=tuple(kinds),
        step_scalings=tuple(scalings),
        accumulated_x=x,
        accumulated_y=y,
    )


@dataclass(frozen=True)
class SinkhornResult:
    """Outcome of scaling to tolerance in float mode."""

    limit: Matrix
    x: DiagonalScaling
    y: DiagonalScaling
    steps_taken: int          # elementary steps, 2 per pair
    converged: bool
    residual: float


def sinkhorn_limit(m: Matrix, tol: float = 1e-12,
                   max_pairs: int = 1000) -> SinkhornResult:
    """Scale until max |row/col sum - 1| <= tol, checked after full pairs.

    Float mode only: a rational iterate is row- or column-stochastic but
    never both, so rational callers should use ``sinkhorn_iterate`` with a
    fixed step count instead.
    """
    require_square(m)
    if m.mode != "float":
        raise ModeError("limits converge in float mode only; "
                        "use sinkhorn_iterate for exact rational steps")
    if not m.is_positive:
        raise NonPositiveEntryError("scaling needs strictly positive entries")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    if max_pairs < 1:
        raise ValueError("max_pairs must be positive")
    x = DiagonalScaling.identity(m.rows, "float")
    y = DiagonalScaling.identity(m.cols, "float")
    current = m
    steps = 0
    res = residual(current)
    converged = res <= tol
    for _ in range(max_pairs):
        if converged:
            break
        d, current = row_scale(current)
        x = x.compose(d)
        d, current = col_scale(current)
        y = y.compose(d)
        steps += 2
        res = residual(current)
        converged = res <= tol
    return SinkhornResult(limit=current, x=x, y=y, steps_taken=steps,
                          converged=converged, residual=res)


def symmetric_scaling(m: Matrix, tol: float = 1e-12) -> DiagonalScaling:
    """Diagonal X with X A X doubly stochastic, for symmetric positive A.

    For symmetric A the limit scalings satisfy x_i / y_i = const, so
    sqrt(x_i * y_i) is the symmetric scaling regardless of how the dilation
    freedom X -> cX, Y -> Y/c was resolved during iteration.
    """
    require_square(m)
    if m.mode != "float":
        raise ModeError("symmetric scalings are computed in float mode")
    if not m.is_symmetric(tol=1e-12):
        raise NotSymmetricError("symmetric matrix required")
    result = sinkhorn_limit(m, tol=tol)
    return DiagonalScaling(
        math.sqrt(a * b) for a, b in zip(result.x.values, result.y.values)
    )
