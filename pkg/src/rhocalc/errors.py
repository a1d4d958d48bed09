"""Exception hierarchy shared by all modules."""


class RhoCalcError(Exception):
    """Base class for every error raised by rhocalc."""


class InputError(RhoCalcError, ValueError):
    """Malformed or out-of-range input."""


class SingularityError(RhoCalcError, ArithmeticError):
    """A required inverse does not exist numerically.

    ``point`` carries the offending shift or evaluation point when there is one.
    """

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class DomainError(RhoCalcError, ValueError):
    """Spectrum is not where the operation needs it (e.g. touching the unit circle)."""


class ConvergenceError(RhoCalcError, RuntimeError):
    """An iterative procedure did not converge."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class HypothesisError(RhoCalcError, ValueError):
    """A theorem hypothesis was not met by the supplied instance."""

    def __init__(self, hypothesis, measured, message=None):
        self.hypothesis = hypothesis
        self.measured = measured
        super().__init__(message or f"hypothesis violated: {hypothesis} (measured {measured!r})")
