"""Exception types shared across the package."""


class FockLabError(Exception):
    """Base class for all focklab errors."""


class ConfigError(FockLabError):
    """Invalid run configuration (bad flag value, inconsistent options)."""


class EvaluationRangeError(FockLabError):
    """Requested evaluation point lies outside the overflow-safe envelope."""


class DivergenceError(FockLabError):
    """A defining integral diverges for the requested parameters."""


class GridMismatchError(FockLabError):
    """Quadrature grid scale/dimension does not match the operation's contract."""


class CalibrationError(FockLabError):
    """Calibration file missing, malformed, or a self-test failed."""


class ConvergenceWarning(UserWarning):
    """Iterative estimate stopped before reaching the requested tolerance."""


class AccuracyWarning(UserWarning):
    """Result may be less accurate than usual (leakage, aliasing, amplification)."""
