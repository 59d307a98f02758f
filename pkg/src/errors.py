"""Error types raised by the derivative calculus.

All of them are ``ValueError`` subclasses, so callers that only care about
"bad input" can keep catching ``ValueError``.
"""

from typing import Optional


class ParseError(ValueError):
    """Malformed text (expression, partition literal, matrix file, argv)."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.message = message
        self.position = position
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} at position {position}")


class DomainError(ValueError):
    """Well-formed input outside the domain of an operation."""


class UndeterminedError(DomainError):
    """The calculus has no rule that decides the requested value."""
