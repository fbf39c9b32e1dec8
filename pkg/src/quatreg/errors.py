"""Exception types raised across the package."""


class QuatregError(Exception):
    """Base class for all package errors."""


class DomainError(QuatregError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class DegenerateError(DomainError):
    """The inputs hit a singular configuration of an otherwise valid formula."""


class ConfigurationError(QuatregError, ValueError):
    pass


class DegreeError(QuatregError, ValueError):
    pass


class NotARootError(QuatregError, ValueError):
    """Raised when dividing by ``q - p`` at a point ``p`` that is not a zero."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class SingularityError(QuatregError, ArithmeticError):
    """Evaluation requested on (or too close to) a singular set.

    ``location`` is either a real number (a real singular point) or a
    :class:`~quatreg.quaternion.SliceSphere`.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class SingularMatrixError(QuatregError, ZeroDivisionError):
    pass


class ConsistencyError(QuatregError, RuntimeError):
    """An internal identity that must hold exactly failed beyond tolerance."""


class ConvergenceError(QuatregError, RuntimeError):
    def __init__(self, message, residuals=None):
        super().__init__(message)
        self.residuals = residuals


class ParseError(QuatregError, ValueError):
    """Malformed JSON document for one of the package schemas."""
