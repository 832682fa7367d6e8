"""Exception hierarchy shared by every cdgamma module."""

from __future__ import annotations


class CDError(ValueError):
    """Base class for all library errors."""


class LevelMismatchError(CDError):
    """Operands live in Cayley-Dickson algebras of different levels."""


class SingularError(CDError, ZeroDivisionError):
    """Inversion of a zero (or zero-divisor-adjacent) element."""


class BranchCutError(CDError):
    """Argument lies on the cut of the principal logarithm."""


class PoleError(CDError):
    """Argument is within the pole tolerance of a pole of Gamma."""

    def __init__(self, message: str, pole: int | None = None):
        super().__init__(message)
        self.pole = pole


class RepresentationError(CDError):
    """An integral representation degenerates at this argument."""


class DomainError(CDError):
    """Argument outside the domain of the chosen route."""


class PreconditionError(CDError):
    """A structural hypothesis (embeddability, coplanarity, ...) failed."""


class ConvergenceRiskError(CDError):
    """Series would be evaluated outside its trusted convergence domain."""


class AccuracyError(CDError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    decide whether it is good enough.
    """

    def __init__(self, message: str, best=None, error_estimate: float = float("inf")):
        super().__init__(message)
        self.best = best
        self.error_estimate = error_estimate


class ParseError(CDError):
    """Malformed Cayley-Dickson number literal."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position
