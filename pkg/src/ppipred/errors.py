"""Exception hierarchy shared across the package."""

from __future__ import annotations


class PpiPredError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(PpiPredError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(PpiPredError):
    """Domain-invariant violation (bad residue, unknown id, bad shape, ...)."""


class InfeasibleSplitError(PpiPredError):
    """Split targets cannot be met on the given pair graph.

    ``achieved`` maps set name -> {label -> count} reached before exhaustion;
    callers may retry with a different seed.
    """

    def __init__(self, message: str, achieved: dict | None = None):
        self.achieved = achieved or {}
        super().__init__(message)


class TrainingError(PpiPredError):
    """Invalid training input (single class, non-finite features, ...)."""


class ModelFormatError(PpiPredError):
    """Model file is unreadable, truncated, or internally inconsistent."""
