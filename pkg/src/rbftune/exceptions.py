"""Exception types raised by rbftune."""


class RbfTuneError(Exception):
    """Base class for all rbftune errors."""


class NumericalError(RbfTuneError):
    """A linear-algebra step failed beyond the built-in fallbacks."""


class ConditioningError(NumericalError):
    """Square collocation matrix could not be factorized, even with jitter.

    Carries the shape parameter at which the factorization failed so that
    tuners can skip the offending candidate.
    """

    def __init__(self, message, epsilon=None):
        super().__init__(message)
        self.epsilon = epsilon


class RankDeficiencyError(NumericalError):
    """Rectangular collocation matrix is rank deficient."""


class SurrogateFitError(NumericalError):
    """Gaussian-process covariance could not be factorized at maximum jitter."""


class SearchFailedError(RbfTuneError):
    """Every candidate shape parameter failed during a search."""


class ConfigurationError(RbfTuneError):
    """Inputs violate a structural requirement (e.g. centers not a subset)."""
