"""Exception hierarchy."""


class CrownError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(CrownError, ValueError):
    """An argument lies outside the domain of the function."""


class SingularityError(CrownError, ArithmeticError):
    """Two bodies coincide, or a denominator vanishes."""

    def __init__(self, message, *, index=None):
        super().__init__(message)
        self.index = index


class PoleError(CrownError, ArithmeticError):
    """The mass-ratio curve is evaluated at (or numerically at) one of its poles."""

    def __init__(self, message, *, a=None):
        super().__init__(message)
        self.a = a


class EvaluationError(CrownError):
    """A function failed while being sampled on a grid."""

    def __init__(self, message, *, abscissa):
        super().__init__(message)
        self.abscissa = abscissa


class ConvergenceError(CrownError):
    """Root refinement did not converge; carries the last bracket."""

    def __init__(self, message, *, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class ConjectureViolation(CrownError):
    """More than two positive zeros of F were detected."""

    def __init__(self, message, *, n, brackets):
        super().__init__(message)
        self.n = n
        self.brackets = list(brackets)


class InconsistencyError(CrownError):
    """Two independent formulations disagree, or a structural check failed."""


class NotFoundError(CrownError):
    """A search interval was exhausted without finding a sign change."""
