"""Exception hierarchy shared by every module of the package."""


class PagingError(Exception):
    """Base class for all package errors."""


class InvalidInputError(PagingError, ValueError):
    """A request, cache or parameter is outside its admissible range."""


class UnsupportedConfigurationError(PagingError):
    """The algorithm or tool does not support the requested problem type."""


class InfeasibleConfigurationError(PagingError):
    """Competitiveness constants violate sum(1/c) <= 1."""


class ResourceLimitError(PagingError):
    """An exact computation exceeded its configured size cap."""


class RandomnessAccessError(InvalidInputError):
    """A deterministic code path tried to consume random bits."""
