"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested quantity."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure did not reach its tolerance.

    ``estimate`` and ``error`` carry the best value found and its error
    estimate, when available.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
