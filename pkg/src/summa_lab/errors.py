"""Exception hierarchy shared by every module."""


class SummaError(Exception):
    """Base class for all harness errors."""


class SizingError(SummaError, ValueError):
    """A request exceeds the sieved range or an allowed size."""


class DomainError(SummaError, ValueError):
    """An argument lies outside the supported domain of an operation."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole."""


class NearZeroError(DomainError):
    """A divisor is numerically indistinguishable from zero."""


class ZeroCountMismatch(SummaError, RuntimeError):
    """The zero scan disagrees with the argument-principle count."""


class CacheFormatError(SummaError, ValueError):
    """A zero-cache file could not be parsed or failed validation."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyTableError(CacheFormatError):
    """A zero-cache file contains no ordinates."""
