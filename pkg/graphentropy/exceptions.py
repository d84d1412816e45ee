"""
Exception hierarchy shared by the library modules and the command layer.
"""


class GraphEntropyError(Exception):
    """Base class for every error raised by graphentropy."""


class DomainError(GraphEntropyError, ValueError):
    """An argument lies outside the domain of the operation."""


class EdgeListParseError(DomainError):
    """A line of an edge-list text could not be parsed."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"line {line_number}: {reason}")


class NumericError(GraphEntropyError, ArithmeticError):
    """A numerical procedure failed or produced non-finite values."""


class ResourceError(GraphEntropyError):
    """The requested computation exceeds a configured resource cap."""


class GenerationError(GraphEntropyError):
    """Random graph generation could not satisfy the requested preconditions."""
