"""Exception types raised across the package."""


class MirlabError(Exception):
    """Base class for all package-specific errors."""


class SeriesTooShortError(MirlabError):
    """The series does not contain enough observations for the request."""


class DegenerateSeriesError(MirlabError):
    """An increment-ratio term is 0/0 (both half-window sums vanish)."""


class ScaleTooLargeError(MirlabError):
    """A requested scale violates the length constraint N >= 3*p*m + 1."""


class AdaptiveGridError(MirlabError):
    """The candidate bandwidth-exponent grid is empty (N too small)."""


class CalibrationError(MirlabError):
    """Monte-Carlo calibration of the covariance table failed."""


class TableError(MirlabError):
    """A covariance table is missing, malformed, or violates its invariants."""


class EmbeddingError(MirlabError):
    """Circulant embedding failed to produce a nonnegative spectrum."""


class NonStationarySpecError(MirlabError):
    """An autocovariance was requested for a non-stationary parameterization."""


class QuadratureError(MirlabError):
    """Numerical integration of a spectral density did not converge."""


class DegenerateRegressorError(MirlabError):
    """A regression-based test statistic has a zero-variance regressor."""
