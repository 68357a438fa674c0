"""Exception types shared across the package."""

from __future__ import annotations


class HyperdeltaError(Exception):
    """Base class for all errors raised by this package."""


class InvalidExponent(HyperdeltaError):
    """An omega-exponent was negative or otherwise unusable."""


class EvalDomainError(HyperdeltaError):
    """A smooth expression was evaluated outside its domain."""


class NonConvergent(HyperdeltaError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class DimensionTooLarge(HyperdeltaError):
    """Iterated quadrature supports at most three variables."""


class NotIntegrable(HyperdeltaError):
    """The density's hyperreal part is not a sum of delta functions."""

    def __init__(self, message: str, term_index: int | None = None):
        super().__init__(message)
        self.term_index = term_index


class PermutationArityError(HyperdeltaError):
    """A permutation's size does not match the density's dimension."""


class SpanError(HyperdeltaError):
    """An input-text error carrying a byte-offset span ``(start, end)``."""

    def __init__(self, span: tuple[int, int], message: str):
        super().__init__(message)
        self.span = span


class LexError(SpanError):
    """The input text contains a character no token can start with."""


class ParseError(SpanError):
    """The token stream does not match the expression grammar."""


class NormalizeError(HyperdeltaError):
    """The parsed expression has no canonical density form."""

    def __init__(self, message: str, span: tuple[int, int] | None = None):
        super().__init__(message)
        self.span = span
