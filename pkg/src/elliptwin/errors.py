"""Exception types shared across the package."""


class ElliptwinError(Exception):
    """Base class for all library-specific errors."""


class NotPrime(ElliptwinError):
    """A modulus (or other required prime) failed the primality test."""


class TooSmall(ElliptwinError):
    """Field characteristic is at most 5, outside the supported range."""


class FormMismatch(ElliptwinError):
    """A modulus form descriptor does not evaluate to the modulus."""


class ModulusMismatch(ElliptwinError):
    """Two field elements from different fields were combined."""


class NonInvertible(ElliptwinError):
    """Attempted to invert zero in a prime field."""


class NotASquare(ElliptwinError):
    """Square root requested for a quadratic non-residue."""


class SingularParameters(ElliptwinError):
    """Curve coefficients with vanishing discriminant."""


class PointNotOnCurve(ElliptwinError):
    """A point failed the curve-membership check."""


class ThresholdExceeded(ElliptwinError):
    """Input is outside the size range a counting tier supports."""


class AmbiguousOrder(ElliptwinError):
    """Group-order search could not certify a unique candidate.

    With joint sampling on the curve and its twist this cannot happen for
    p > 457, so seeing it indicates an internal bug.
    """


class InternalLimit(ElliptwinError):
    """A configurable internal resource ceiling was hit."""


class NoData(ElliptwinError):
    """Estimation was requested with no input observations."""


class OutOfRange(ElliptwinError):
    """A probability argument was outside [0, 1]."""


class ResidualComposite(ElliptwinError):
    """Factoring budget exhausted; an audit row is inconclusive, not wrong."""
