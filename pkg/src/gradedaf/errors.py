"""Exception hierarchy shared by the library and the command line."""


class GradedAfError(Exception):
    """Base class for all domain errors raised by this package."""


class ParseError(GradedAfError):
    """Malformed framework, formula or specification text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class PreconditionError(GradedAfError):
    """An operation was called outside its documented domain."""


class CapExceeded(GradedAfError):
    """An exhaustive search would exceed its configured size bound."""


class DefenseCycle(GradedAfError):
    """Iterating the defense function entered a cycle of length > 1."""


class InvariantViolation(GradedAfError):
    """A property that must always hold was violated; this indicates a bug."""
