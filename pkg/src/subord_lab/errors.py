"""Exception hierarchy shared by every module."""


class SubordLabError(Exception):
    """Base class for all library errors."""


class ArgumentError(SubordLabError, ValueError):
    """Malformed or inconsistent arguments (dimension mismatch, bad descriptor...)."""


class DomainError(SubordLabError, ValueError):
    """A point lies outside the region where an operation is defined."""


class SingularityError(SubordLabError, ArithmeticError):
    """A kernel was evaluated on its singular set."""


class NumericError(SubordLabError, ArithmeticError):
    """Non-finite values or failed numerical procedures."""


class UnsupportedError(SubordLabError, NotImplementedError):
    """Requested case has no implementation (e.g. closed forms for p != 2)."""


class DegenerateSequenceError(SubordLabError, ValueError):
    """Gram matrix of a point sequence is numerically singular."""


class NoBezoutError(SubordLabError, ValueError):
    """Generators share a common zero, so no Bezout cofactors exist."""


class RejectedInputError(SubordLabError, ValueError):
    """Input data fails a stated precondition (e.g. lifted corona residual)."""
