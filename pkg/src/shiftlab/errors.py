"""Shared exception types."""


class ShiftLabError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ShiftLabError):
    """A rule or configuration file could not be parsed."""

    def __init__(self, path, line, message):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line
        self.message = message


class PreconditionError(ShiftLabError):
    """An operation was invoked outside its stated contract."""


class BudgetExceededError(ShiftLabError):
    """A configured feasibility cap was hit; the result is unknown, not wrong."""

    def __init__(self, kind, limit, where=""):
        detail = f" in {where}" if where else ""
        super().__init__(f"{kind} exceeded (limit {limit}){detail}")
        self.kind = kind
        self.limit = limit
        self.where = where


class InternalCheckError(ShiftLabError):
    """A self-check that must never fail did; indicates a bug, not bad input."""
