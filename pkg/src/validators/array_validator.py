"""
Array Validator.

Validates input matrices before they reach the numerical code.
"""

from typing import Any, Optional

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..core.interfaces import IValidator
from ..core.logging_config import get_logger

logger = get_logger(__name__)


class ArrayValidator(IValidator):
    """
    Validates real input matrices.

    Checks rank 2, at least one row and column, finite entries and,
    optionally, a required column count.
    """

    def __init__(self, dim: Optional[int] = None, allow_empty: bool = False):
        """
        Initialize array validator.

        Args:
            dim: Required number of columns (None accepts any)
            allow_empty: Whether zero rows are acceptable
        """
        self.dim = dim
        self.allow_empty = allow_empty

    def validate(self, data: Any) -> bool:
        """
        Validate a matrix.

        Args:
            data: Candidate array

        Returns:
            True if the matrix is usable, False otherwise
        """
        try:
            self.check(data)
        except InvalidArgumentError as e:
            logger.debug(f"Array validation failed: {e}")
            return False
        return True

    def check(self, data: Any, name: str = 'X') -> np.ndarray:
        """
        Validate and convert to a float64 matrix.

        Raises:
            InvalidArgumentError: If the matrix is malformed
        """
        array = np.asarray(data, dtype=float)
        if array.ndim != 2:
            raise InvalidArgumentError(f"{name} must be a 2-D matrix, got shape {array.shape}")
        if array.shape[1] < 1:
            raise InvalidArgumentError(f"{name} must have at least one column")
        if array.shape[0] < 1 and not self.allow_empty:
            raise InvalidArgumentError(f"{name} must have at least one row")
        if self.dim is not None and array.shape[1] != self.dim:
            raise InvalidArgumentError(
                f"{name} has dimension {array.shape[1]}, expected {self.dim}"
            )
        if not np.all(np.isfinite(array)):
            raise InvalidArgumentError(f"{name} contains non-finite entries")
        return array


def ensure_matrix(data: Any, name: str = 'X', dim: Optional[int] = None) -> np.ndarray:
    """Validate a non-empty finite real matrix, returning it as float64."""
    return ArrayValidator(dim=dim).check(data, name)


def ensure_pair(X: Any, Y: Any) -> tuple:
    """Validate two matrices that must share their dimension."""
    X = ensure_matrix(X, 'X')
    Y = ensure_matrix(Y, 'Y', dim=X.shape[1])
    return X, Y


def ensure_count(value: Any, name: str) -> int:
    """Validate a positive integer count such as M, d or L."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise InvalidArgumentError(f"{name} must be a positive integer, got {value!r}")
    return int(value)
