"""Exception hierarchy.

Every error raised by the library derives from :class:`EllwallError`.  The CLI
maps :class:`ValidationError` to exit code 2 and :class:`Infeasible` to exit
code 3.
"""

from __future__ import annotations


class EllwallError(Exception):
    """Base class for all library errors."""


class ValidationError(EllwallError, ValueError):
    """Input data violates a documented invariant."""


class DimensionMismatch(ValidationError):
    pass


class UnknownFiber(ValidationError):
    pass


class PreconditionViolated(EllwallError, ValueError):
    """An operation was called outside its domain."""


class NonPositiveDenominator(PreconditionViolated):
    pass


class GcdViolation(PreconditionViolated):
    pass


class NonIntegral(PreconditionViolated):
    pass


class ZeroRank(PreconditionViolated):
    pass


class NotSpherical(PreconditionViolated):
    pass


class ZeroVector(PreconditionViolated):
    pass


class InvalidWallClass(PreconditionViolated):
    pass


class UnrepresentableSlope(PreconditionViolated):
    pass


class BadDeterminant(PreconditionViolated):
    pass


class NotCoprime(PreconditionViolated):
    pass


class LengthTooSmall(PreconditionViolated):
    pass


class NonNegativeInput(PreconditionViolated):
    pass


class Pole(PreconditionViolated):
    pass


class BoundaryInput(PreconditionViolated):
    pass


class ZeroClass(PreconditionViolated):
    pass


class InconsistentHodge(PreconditionViolated):
    pass


class InvariantViolation(EllwallError, ArithmeticError):
    """An internal identity failed; the surface description is inconsistent."""


class Infeasible(EllwallError, ValueError):
    """The query is well formed but describes an empty moduli problem."""


class NonIntegralLength(Infeasible):
    pass


class NegativeLength(Infeasible):
    pass


class NegativeDimension(Infeasible):
    """Expected dimension is negative, so the moduli space is empty."""
