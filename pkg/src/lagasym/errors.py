"""Exception hierarchy shared across the package."""


class LagasymError(Exception):
    """Base class for all package errors."""


class InvalidSpecError(LagasymError, ValueError):
    """Weight specification violates an invariant.

    ``code`` distinguishes the failing check: ``"alpha_range"``,
    ``"leading_coeff"`` or ``"shape"``.
    """

    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


class DomainError(LagasymError, ValueError):
    """Argument outside the domain of an operation."""


class MrsUndefinedError(LagasymError, ArithmeticError):
    """No unique positive MRS number for the requested degree."""


class NumericalError(LagasymError, ArithmeticError):
    """A numerical procedure failed to converge or lost accuracy.

    ``where`` names the module and operation that failed.
    """

    def __init__(self, message, where=""):
        super().__init__(message)
        self.where = where
