"""Exception types raised across the package."""


class SumprodError(Exception):
    """Base class for all package errors."""


class DegenerateInputError(SumprodError, ValueError):
    """Coincident points, an all-zero line, or another degenerate configuration."""


class ZeroDivisorError(SumprodError, ZeroDivisionError):
    """Zero appeared where it would be used as a divisor."""


class ParseError(SumprodError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(SumprodError, ValueError):
    """A family spec or run configuration failed validation."""


class UndersizedInputError(SumprodError, ValueError):
    pass


class ComputationTooLarge(SumprodError, RuntimeError):
    """An exact count would exceed the configured work budget."""
