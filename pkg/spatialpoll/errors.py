"""
Custom exceptions for spatialpoll.
"""


class SpatialPollError(Exception):
    """Base exception for spatialpoll errors."""
    pass


class InvalidParameterError(SpatialPollError, ValueError):
    """A parameter or precondition was violated."""
    pass


class CircumferenceMismatchError(InvalidParameterError):
    """Two measures living on circles of different circumference were combined."""
    pass


class AtomNotFoundError(SpatialPollError, KeyError):
    """Requested location is not an atom of the configuration."""
    pass


class SeriesTruncationError(SpatialPollError):
    """The arrival series did not reach the requested mass within N_max terms."""
    pass


class UnstableSystemError(InvalidParameterError):
    """Stationary quantities were requested for parameters with load >= 1."""
    pass


class InsufficientDataError(SpatialPollError):
    """Not enough cycles or tail levels to produce an estimate."""
    pass


class ConfigurationError(SpatialPollError):
    """Scenario configuration could not be parsed or validated."""
    pass
