"""Exception and warning types shared across the package."""

from __future__ import annotations


class GKZError(Exception):
    """Base class for all errors raised by gkzcurve."""


class CurveError(GKZError, ValueError):
    pass


class NotStrictlyIncreasing(CurveError):
    pass


class GcdNotOne(CurveError):
    pass


class MZero(CurveError):
    pass


class BoundExceeded(GKZError):
    """The E(A) enumeration hit its hard cap before certifying completeness."""


class SupportMismatch(GKZError, ValueError):
    pass


class NotInKernel(GKZError, ValueError):
    pass


class ExponentInI(GKZError, ValueError):
    pass


class SZero(GKZError, ValueError):
    pass


class MNotOne(GKZError, ValueError):
    pass


class NearSingular(GKZError):
    """Roots of f(x; t) are too close together (x is near the discriminant locus)."""


class DivisionByZeroCoordinate(GKZError, ZeroDivisionError):
    pass


class SameRoot(GKZError, ValueError):
    pass


class OutsideRegion(UserWarning):
    """The point does not satisfy the heuristic convergence test for the root series."""


class NotHypergeometricWarning(UserWarning):
    """chi(alpha) was evaluated at an exponent outside J(A)."""
