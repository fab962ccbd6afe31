"""Random Gaussian RBM spin states: sampling, entanglement, and the matching
thermodynamic-limit statistical-mechanics models."""

__version__ = "0.1.0"

from .core import (
    RBMParameters,
    StateVector,
    WeightMatrix,
    amplitude,
    average_norm_squared_analytic,
    build_state,
    log_amplitude,
    log_norm_squared,
    norm_squared,
    sample_weights,
)
from .errors import CapacityError, ConfigError

__all__ = [
    "__version__",
    "RBMParameters",
    "WeightMatrix",
    "StateVector",
    "sample_weights",
    "amplitude",
    "log_amplitude",
    "build_state",
    "norm_squared",
    "log_norm_squared",
    "average_norm_squared_analytic",
    "CapacityError",
    "ConfigError",
]
