"""Exception types raised across the package.

All derive from :class:`ValueError` so callers that only care about bad
input can catch that.
"""


class FingerprintError(ValueError):
    """Base class for package errors."""


class DimensionError(FingerprintError):
    """Shapes are incompatible or a dimension is out of range."""


class NormalizationError(FingerprintError):
    """A state or coefficient vector is not normalized."""


class RankError(FingerprintError):
    """A matrix lacks the rank an operation needs."""


class NoUnitarySolutionError(RankError):
    """The constraint admits no unitary solution for the given data."""


class ValidationError(FingerprintError):
    """A scheme fails the one-sided-error check required by an operation."""


class UnsupportedConfigurationError(FingerprintError):
    """The requested combination of inputs is refused rather than approximated."""
