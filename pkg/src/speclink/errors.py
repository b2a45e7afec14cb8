"""Exception hierarchy shared across the package."""


class SpeclinkError(Exception):
    """Base class for every error raised by speclink."""


class InputError(SpeclinkError, ValueError):
    """Malformed input data: bad vertex ids, unparseable lines, missing files."""


class ConfigError(SpeclinkError, ValueError):
    """Inconsistent or out-of-range configuration."""


class DisconnectedGraphError(SpeclinkError):
    """A spectral or kernel operation was given a disconnected graph."""

    def __init__(self, message=None):
        super().__init__(
            message
            or "graph is disconnected; reduce it to its largest connected component first"
        )


class DenseSizeError(SpeclinkError):
    """A dense n x n kernel was requested above the configured size guard."""


class DivergenceError(SpeclinkError):
    """The Katz series does not converge for the requested beta."""


class ConvergenceError(SpeclinkError):
    """An iterative eigensolver failed to meet its tolerance."""

    def __init__(self, message, best_residual=None):
        super().__init__(message)
        self.best_residual = best_residual


class PredictionValidationError(SpeclinkError):
    """A predictor emitted a pair that is already a training edge."""
