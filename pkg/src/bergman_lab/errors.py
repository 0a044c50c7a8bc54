"""Exception and warning classes shared across the package."""


class BergmanLabError(Exception):
    """Base class for all errors raised by bergman_lab."""


class DomainError(BergmanLabError, ValueError):
    """A point lies outside the domain where the quantity is defined."""


class ParameterError(BergmanLabError, ValueError):
    """A parameter violates the stated hypotheses (e.g. alpha <= -1)."""


class ValidityError(BergmanLabError):
    """A matrix or form that must be positive definite is not."""


class AccuracyError(BergmanLabError):
    """A requested accuracy could not be reached.

    The best available estimate is carried in ``best`` and the achieved
    error bound in ``bound``.
    """

    def __init__(self, message, best=None, bound=None):
        super().__init__(message)
        self.best = best
        self.bound = bound


class FitError(BergmanLabError):
    """Least-squares design matrix is rank deficient."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ModelMismatchError(BergmanLabError):
    """Eigenvalue data does not follow a power law on the given window."""


class NonEllipticError(BergmanLabError):
    """An operator with a vanishing eigenvalue has no parametrix."""


class ConfigError(BergmanLabError, ValueError):
    """Invalid command-line configuration."""


class ConditioningWarning(UserWarning):
    """A linear solve was performed on an ill-conditioned matrix."""
