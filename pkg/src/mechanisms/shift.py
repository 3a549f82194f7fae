"""
Positivity shift for discretely-induced features.

Translating both sets by the same vector c leaves x - y, and hence the
Gaussian kernel, unchanged while making every coordinate positive.
"""

from typing import Optional

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..validators.array_validator import ensure_matrix
from .params import ShiftSpec


def fit_shift(X: np.ndarray, Y: Optional[np.ndarray] = None, epsilon: float = 1e-8) -> ShiftSpec:
    """
    Fit c_l = min over all rows of X and Y of coordinate l, minus epsilon.

    Args:
        X: L x d rows
        Y: Optional L' x d rows (same d)
        epsilon: Positive floor left between c and the data

    Returns:
        ShiftSpec(c, epsilon)

    Raises:
        InvalidArgumentError: If there are no rows or dimensions differ
    """
    X = ensure_matrix(X, 'X')
    minimum = X.min(axis=0)
    if Y is not None:
        Y = ensure_matrix(Y, 'Y', dim=X.shape[1])
        minimum = np.minimum(minimum, Y.min(axis=0))
    return ShiftSpec(c=minimum - epsilon, epsilon=float(epsilon))


def apply_shift(Z: np.ndarray, shift: ShiftSpec) -> np.ndarray:
    """
    Map each row z to max(z - c, epsilon) coordinatewise.

    Rows of the fitting set are never clamped; held-out rows below c + epsilon are.
    """
    Z = ensure_matrix(Z, 'Z')
    if Z.shape[1] != shift.c.shape[0]:
        raise InvalidArgumentError(
            f"shift has dimension {shift.c.shape[0]}, inputs have {Z.shape[1]}"
        )
    return np.maximum(Z - shift.c[None, :], shift.epsilon)
