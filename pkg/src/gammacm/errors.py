"""Exception types shared across the package."""


class GammaCMError(Exception):
    """Base class for all package errors."""


class TableLimitError(GammaCMError, IndexError):
    """Requested index exceeds the configured table limit."""


class DomainError(GammaCMError, ValueError):
    """Argument outside the supported domain of an operation."""


class ConvergenceError(GammaCMError):
    """A series could not reach the requested tolerance within the iteration cap."""

    def __init__(self, message, best_value=None, best_bound=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_bound = best_bound


class AccuracyError(GammaCMError):
    """Adaptive refinement hit its cap before reaching the requested tolerance.

    Carries the best value and error bound obtained so far.
    """

    def __init__(self, message, best_value=None, best_bound=None):
        super().__init__(message)
        self.best_value = best_value
        self.best_bound = best_bound
