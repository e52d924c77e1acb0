"""
Settings and error types shared by every qptlab module.
"""

from .config import Settings
from .errors import (
    QptlabError,
    InvalidDimensionError,
    DimensionError,
    CapacityError,
    DimacsParseError,
    GraphFormatError,
    GeneratorParseError,
    NotHermitianError,
    WrongModeError,
    TrainingError,
    IntegrationError,
    ConfigError,
    SweepTaskError,
)

__all__ = [
    'Settings',
    'QptlabError',
    'InvalidDimensionError',
    'DimensionError',
    'CapacityError',
    'DimacsParseError',
    'GraphFormatError',
    'GeneratorParseError',
    'NotHermitianError',
    'WrongModeError',
    'TrainingError',
    'IntegrationError',
    'ConfigError',
    'SweepTaskError',
]
