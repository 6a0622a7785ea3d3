"""Exception types shared across the package."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed transfer-matrix text.

    Carries the 1-based line and column where parsing failed; the message
    already includes them.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class JsonFormatError(ValueError):
    """JSON input that does not match any of the documented schemas."""


class DimensionError(ValueError):
    """Shapes or index ranges that are mutually inconsistent."""


class SingularMatrixError(ValueError):
    """A matrix required to be invertible is singular."""


class PropernessError(ValueError):
    """A transfer-matrix entry is not strictly proper, so it has no
    state-space realization without feed-through."""

    def __init__(self, message: str, entry: tuple[int, int] | None = None):
        super().__init__(message)
        self.entry = entry


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a pole."""

    def __init__(self, message: str, point):
        super().__init__(message)
        self.point = point
