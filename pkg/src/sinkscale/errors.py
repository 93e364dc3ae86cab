"""Exception types shared across the package."""

from __future__ import annotations


class SinkscaleError(Exception):
    """Base class for all errors raised by this package."""


class MatrixFormatError(SinkscaleError):
    """Malformed matrix input (text, JSON, or constructor arguments)."""


class DimensionMismatchError(SinkscaleError):
    """Operands have incompatible shapes."""


class NotSquareError(SinkscaleError):
    """A square matrix is required."""


class NotSymmetricError(SinkscaleError):
    """A symmetric matrix is required."""


class NonPositiveEntryError(SinkscaleError):
    """Strictly positive entries are required."""


class ModeError(SinkscaleError):
    """Operation is not defined for the matrix's scalar mode."""


class DegenerateKError(SinkscaleError):
    """K = 1 collapses a parametrised family to the uniform matrix."""


class NotTwoValuedError(SinkscaleError):
    """Classification needs a matrix with at most two distinct entry values."""


class NoClassError(SinkscaleError):
    """No canonical pattern matched; impossible for symmetric two-valued input."""


class NoPositiveTripleError(SinkscaleError):
    """No root of the scaling polynomial yields an all-positive scaling."""


class AmbiguousTripleError(SinkscaleError):
    """More than one candidate scaling survived the positivity filter."""


class NotDoublyStochasticError(SinkscaleError):
    """A doubly stochastic matrix is required."""


class UnsupportedError(SinkscaleError):
    """The requested combination has no supported closed form."""


class NonIsolatingError(SinkscaleError):
    """The given interval does not bracket exactly one root."""


class ZeroPolynomialError(SinkscaleError):
    """The zero polynomial has no meaningful root data."""
