"""Motore esatto dei momenti del limite centrale delle trasposizioni stellari."""

__version__ = "1.0.0"

from .algebra import WeightVector, character, power_sum
from .core import MomentEngine
from .errors import (
    ConfigError,
    ConsistencyError,
    InfeasibleSizeError,
    InputValidationError,
    MomentsError,
)
from .partitions import parse_partition, tau_pi
from .perm import Permutation, parse_cycles
from .routes import Route

__all__ = [
    "__version__",
    "WeightVector",
    "character",
    "power_sum",
    "MomentEngine",
    "MomentsError",
    "InputValidationError",
    "InfeasibleSizeError",
    "ConsistencyError",
    "ConfigError",
    "parse_partition",
    "tau_pi",
    "Permutation",
    "parse_cycles",
    "Route",
]
