"""Exceptions for the enhancedsw library."""


class EnhancedSWError(Exception):
    """Base exception for enhancedsw errors."""


class DimensionMismatchError(EnhancedSWError):
    """Operands live in ambient spaces of different dimension."""


class ClosureOverflowError(DimensionMismatchError):
    """An algebra closure basis grew past the operator-space dimension."""


class SingularMatrixError(EnhancedSWError):
    """A matrix that must be invertible has zero determinant."""


class PreconditionError(EnhancedSWError):
    """An operation was called outside its domain of definition."""


class VerificationError(EnhancedSWError):
    """Two independent constructions of the same object disagree."""


class ConfigError(EnhancedSWError):
    """Invalid run configuration."""


class SizingError(ConfigError):
    """The ambient dimension (n+1)^r exceeds the configured guard."""


class UnknownCheckError(ConfigError):
    """A requested check name is not known."""
