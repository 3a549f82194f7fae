"""
Core module providing foundational components for the application.

Includes interfaces, exceptions, results and the seeded random stream.
"""

from .interfaces import IValidator, IFeatureMap
from .exceptions import (
    RFKError,
    InvalidArgumentError,
    InvalidParameterError,
    NumericOverflowError,
    DegenerateDenominatorError,
    DataIOError,
)
from .results import Result
from .rng import RngState, as_rng

__all__ = [
    'IValidator',
    'IFeatureMap',
    'RFKError',
    'InvalidArgumentError',
    'InvalidParameterError',
    'NumericOverflowError',
    'DegenerateDenominatorError',
    'DataIOError',
    'Result',
    'RngState',
    'as_rng',
]
