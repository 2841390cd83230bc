"""Exception and warning types shared across the package."""


class QDomainError(ValueError):
    """An argument lies outside the domain of the function."""


class EvaluationError(ValueError):
    """An integrand returned a non-finite value at a sample point."""

    def __init__(self, message, index=None, point=None):
        super().__init__(message)
        self.index = index
        self.point = point


class ConvergenceError(ArithmeticError):
    """A truncated series or product needed more terms than the policy allows.

    ``partial`` holds the value accumulated before giving up.
    """

    def __init__(self, message, partial=None, terms_used=0):
        super().__init__(message)
        self.partial = partial
        self.terms_used = terms_used


class QOverflowError(OverflowError):
    """The result is finite in log space but overflows a float."""


class DivergenceWarning(RuntimeWarning):
    """A bilateral q-series appears to grow at one end of its window."""
