"""Exception hierarchy.

Two families matter to callers: :class:`NumericError` (the geometry or the
numerics broke down at some parameter value) and :class:`UsageError` (the
input itself is malformed).  The CLI maps them to exit codes 3 and 2.
"""

from __future__ import annotations


class GalcurveError(Exception):
    """Base class for every error raised by this package."""


class UsageError(GalcurveError, ValueError):
    pass


class NumericError(GalcurveError, ArithmeticError):
    """A numeric failure, optionally tagged with the parameter value ``at``."""

    def __init__(self, message: str, at: float | None = None):
        self.at = at
        if at is not None:
            message = f"{message} (at parameter {at!r})"
        super().__init__(message)


# -- jets / expressions -------------------------------------------------------

class DivisionByZero(NumericError):
    pass


class DomainError(NumericError):
    pass


class ExprSyntaxError(UsageError):
    """Malformed expression text.

    ``offset`` is a byte offset into the UTF-8 encoding of the input and
    ``expected`` the set of token descriptions that would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.offset = offset
        self.expected = frozenset(expected)
        detail = f" (expected one of: {', '.join(sorted(self.expected))})" if self.expected else ""
        super().__init__(f"{message} at byte {offset}{detail}")


class UnknownFunction(UsageError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown function {name!r} at byte {offset}")


class UnboundParameter(UsageError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"parameter {name!r} has no value")


# -- curves -------------------------------------------------------------------

class OutOfDomain(NumericError):
    pass


class NotAdmissible(NumericError):
    """x'(t) vanishes or changes sign; ``t_witness`` is where it was seen."""

    def __init__(self, message: str, t_witness: float):
        self.t_witness = t_witness
        super().__init__(message, at=t_witness)


class NoConvergence(NumericError):
    pass


class FrameUndefined(NumericError):
    """Curvature below threshold.  ``kappa`` and ``tangent`` are still valid."""

    def __init__(self, message: str, at: float, kappa: float, tangent):
        self.kappa = kappa
        self.tangent = tangent
        super().__init__(message, at=at)


class DegenerateSpeed(NumericError):
    pass


class NotAnIsometry(UsageError):
    pass


# -- involutes / evolutes -----------------------------------------------------

class SingularLambda(NumericError):
    pass


class EmptyDomain(NumericError):
    pass


class PlanarBase(NumericError):
    pass


class MismatchedTargets(UsageError):
    pass
