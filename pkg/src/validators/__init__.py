"""
Validators module for input validation.

Provides matrix validation and labelled-dataset validation.
"""

from .array_validator import ArrayValidator, ensure_matrix, ensure_pair, ensure_count
from .dataset_validator import DatasetValidator

__all__ = [
    'ArrayValidator',
    'DatasetValidator',
    'ensure_matrix',
    'ensure_pair',
    'ensure_count',
]
