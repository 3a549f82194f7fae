"""
Generalized exponential random features.

f(omega, x) = D exp(A ||omega||^2 + sigma B omega^T x + C ||x||^2), where
sigma is 1 for the first map and s for the second. TrigRF (A=0, s=-1),
PosRF (A=0, s=+1) and OPRF (real optimal A, s=+1) are special cases.
"""

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..projections.ensemble import ProjectionEnsemble
from ..validators.array_validator import ensure_matrix
from .base import (
    BaseFeatureMap,
    FeatureMatrix,
    KernelMode,
    Side,
    exponentiate_checked,
    softmax_log_prefactor,
)
from .params import GerfParams


def gerf_log_features(
    X: np.ndarray,
    params: GerfParams,
    ens: ProjectionEnsemble,
    side: Side,
    kernel_mode: KernelMode = KernelMode.GAUSSIAN
) -> np.ndarray:
    """
    Log of the GERF feature values, L x M.

    Real when params.is_real, complex otherwise.

    Raises:
        InvalidArgumentError: If X, params and ens disagree on the dimension
    """
    X = ensure_matrix(X, 'X')
    if ens.dim != X.shape[1] or params.d != X.shape[1]:
        raise InvalidArgumentError(
            f"dimension mismatch: inputs d={X.shape[1]}, ensemble d={ens.dim}, params d={params.d}"
        )
    sign = 1 if Side(side) is Side.FIRST else params.s
    x_sq = np.einsum('ld,ld->l', X, X)
    projections = X @ ens.rows.T

    if params.is_real:
        log_values = (
            params.A.real * ens.sq_norms[None, :]
            + sign * params.B.real * projections
            + params.C * x_sq[:, None]
            + params.log_D.real
        )
    else:
        log_values = (
            params.A * ens.sq_norms[None, :]
            + sign * params.B * projections
            + params.C * x_sq[:, None]
            + params.log_D
        )

    if KernelMode(kernel_mode) is KernelMode.SOFTMAX:
        log_values = log_values + softmax_log_prefactor(X)[:, None]
    return log_values


def featurize_gerf(
    X: np.ndarray,
    params: GerfParams,
    ens: ProjectionEnsemble,
    side: Side,
    kernel_mode: KernelMode = KernelMode.GAUSSIAN
) -> FeatureMatrix:
    """
    Evaluate GERF features for every (row of X, projection) pair.

    Args:
        X: L x d inputs
        params: Valid GERF parameters
        ens: Projection ensemble with matching dimension
        side: first for f^(1), second for f^(2)
        kernel_mode: gaussian, or softmax (extra factor exp(||x||^2 / 2))

    Returns:
        FeatureMatrix, complex unless A is real and s = +1

    Raises:
        InvalidArgumentError: On dimension mismatch
        NumericOverflowError: If a feature is not finite
    """
    log_values = gerf_log_features(X, params, ens, side, kernel_mode)
    values = exponentiate_checked(log_values, 'GERF')
    return FeatureMatrix(values=values, side=Side(side), kernel_mode=KernelMode(kernel_mode))


def gerf_feature_bound(params: GerfParams, x: np.ndarray) -> float:
    """
    Upper bound of f^(1)(omega, x) over all omega, for real A < 0.

    Completing the square in omega gives D exp(-B^2 ||x||^2 / (4A) + C ||x||^2).
    """
    if not params.is_real or params.A.real >= 0:
        raise InvalidArgumentError("the feature bound exists only for real A < 0 and s = +1")
    sq = float(np.dot(x, x))
    A, B = params.A.real, params.B.real
    return float(np.exp(params.log_D.real - B * B * sq / (4 * A) + params.C * sq))


class GerfFeatureMap(BaseFeatureMap):
    """GERF-family features bound to one projection ensemble."""

    def __init__(
        self,
        params: GerfParams,
        ensemble: ProjectionEnsemble,
        kernel_mode: KernelMode = KernelMode.GAUSSIAN
    ):
        super().__init__(kernel_mode)
        if params.d != ensemble.dim:
            raise InvalidArgumentError(
                f"GERF parameters built for d={params.d}, ensemble has d={ensemble.dim}"
            )
        self.params = params
        self.ensemble = ensemble

    @property
    def feature_count(self) -> int:
        return self.ensemble.count

    @property
    def dim(self) -> int:
        return self.ensemble.dim

    @property
    def is_complex(self) -> bool:
        return not self.params.is_real

    def featurize(self, X: np.ndarray, side: Side) -> FeatureMatrix:
        return featurize_gerf(X, self.params, self.ensemble, side, self.kernel_mode)
