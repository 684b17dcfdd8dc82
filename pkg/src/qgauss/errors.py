"""Exception types shared across the package."""


class QGaussError(Exception):
    """Base class for all library errors."""


class RegimeError(QGaussError):
    """The entropic index is outside the regime where the quantity exists."""


class ValidityError(QGaussError):
    """Parameters fail the closed-form transform validity conditions."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)


class ConvergenceError(QGaussError):
    """A numerical routine could not reach the requested tolerance."""


class CutoffNotFoundError(ConvergenceError):
    """No cut-off frequency below the threshold within the scan horizon."""


class GridError(QGaussError):
    """Invalid sampling grid (non-positive step or empty index range)."""
