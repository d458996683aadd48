"""Exception types shared across the package."""


class UsageError(ValueError):
    """Invalid arguments, e.g. mixing series of different truncation order."""


class InsufficientOrderError(UsageError):
    """A series was built at too low an order for the requested coefficient."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class IntegrityError(RuntimeError):
    """Two independent computations of the same exact quantity disagree."""


class ContourError(RuntimeError):
    """A contour failed its enclosure or branch preflight."""


class AccuracyError(RuntimeError):
    """Quadrature did not reach the requested tolerance.

    The best available result is attached as ``result`` so callers can still
    report the value together with its error estimate.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result
