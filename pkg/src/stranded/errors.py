"""Exception types raised across the package."""

from __future__ import annotations


class StrandedError(Exception):
    """Base class for all package errors."""


class GraphError(StrandedError, ValueError):
    """A graph violates the construction rules of its model."""


class PortReusedError(GraphError):
    pass


class DanglingCornerError(GraphError):
    pass


class SignMismatchError(GraphError):
    pass


class ColorViolationError(GraphError):
    pass


class BadCornerIndexError(GraphError):
    pass


class UnsupportedDimensionError(StrandedError, ValueError):
    pass


class NoExternalLegsError(StrandedError, ValueError):
    pass


class UnpairableError(StrandedError, ValueError):
    pass


class BudgetExceededError(StrandedError, RuntimeError):
    pass


class OrderTooLargeError(BudgetExceededError):
    pass


class SymbolAbsentError(StrandedError, ValueError):
    pass


class SymbolRepeatedError(StrandedError, ValueError):
    pass


class DslSyntaxError(StrandedError, ValueError):
    """Parse failure with a 1-based source position."""

    def __init__(self, line: int, col: int, message: str):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class DslSemanticError(StrandedError, ValueError):
    """The document parsed but does not describe a valid graph."""

    def __init__(self, message: str, line: int | None = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.message = message
