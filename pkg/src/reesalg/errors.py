"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ReesError(Exception):
    """Base class for all package errors."""


class ContextMismatch(ReesError):
    pass


class MissingImage(ReesError):
    pass


class UnknownVariable(ReesError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class ExponentOverflow(ReesError, OverflowError):
    pass


class ParseError(ReesError, ValueError):
    pass


class ZeroPolynomial(ReesError, ValueError):
    pass


class NotASubcontext(ReesError):
    pass


class OrderNotEliminating(ReesError):
    pass


class NotAGroebnerBasis(ReesError):
    pass


class NotContained(ReesError):
    pass


class ResourceLimit(ReesError):
    """Raised when Buchberger's algorithm exceeds its step budget.

    ``state`` holds the partial basis and the pending pair list at the
    moment the limit was hit, so callers can dump it.
    """

    def __init__(self, message: str, state: dict | None = None):
        super().__init__(message)
        self.state = state or {}


class InvalidParams(ReesError, ValueError):
    """Base for curve-parameter validation failures."""


class NotCoprime(InvalidParams):
    pass


class NotMinimal(InvalidParams):
    pass


class OutOfRange(InvalidParams):
    pass
