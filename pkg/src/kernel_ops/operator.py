"""
Low-rank kernel operator application.
"""

from typing import Optional

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..mechanisms.base import KernelMode, Side
from ..mechanisms.factory import Randomness, build_feature_map
from ..mechanisms.params import MechanismSpec
from ..validators.array_validator import ensure_pair


def rf_apply(
    X: np.ndarray,
    Y: np.ndarray,
    c: np.ndarray,
    spec: MechanismSpec,
    randomness: Randomness,
    kind: Optional[KernelMode] = None
) -> np.ndarray:
    """
    Approximate K c with K_ij = K(x_i, y_j), never forming K.

    Computes (1/M) Re(Phi_X (Phi_Y^T c)) in O(L M d).

    Args:
        X: L x d first set
        Y: L' x d second set
        c: L'-vector or L' x n matrix
        spec: Resolved mechanism (plus kinds carry their fitted shift)
        randomness: Projection ensemble or discrete sample of the mechanism
        kind: Target kernel, overriding the spec's kernel mode

    Returns:
        L-vector (or L x n matrix) estimate of K c

    Raises:
        InvalidArgumentError: On shape mismatch
        NumericOverflowError: If a feature is not finite
    """
    X, Y = ensure_pair(X, Y)
    c = np.asarray(c, dtype=float)
    if c.ndim not in (1, 2) or c.shape[0] != Y.shape[0]:
        raise InvalidArgumentError(f"c must have {Y.shape[0]} rows, got shape {c.shape}")
    if kind is not None and KernelMode(kind) is not spec.kernel_mode:
        spec = spec.with_updates(kernel_mode=KernelMode(kind))

    feature_map = build_feature_map(spec, randomness)
    phi_x = feature_map.featurize(X, Side.FIRST).values
    phi_y = feature_map.featurize(Y, Side.SECOND).values
    return np.real(phi_x @ (phi_y.T @ c)) / feature_map.feature_count
