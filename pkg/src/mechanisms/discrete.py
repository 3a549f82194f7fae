"""
Discretely-induced random features.

Built from the Taylor expansion of exp(x^T y): with omega_1..omega_d i.i.d.
from a law p_k on {0, 1, 2, ...},

    f(omega, x) = exp(-||x||^2 / 2) prod_l x_l^omega_l (omega_l!)^(-1/2) p_omega_l^(-1/2)

serves as both f^(1) and f^(2). Products are accumulated as log-magnitude
and sign; 0^0 is taken as 1.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from ..core.exceptions import InvalidArgumentError
from ..core.rng import RngState
from ..validators.array_validator import ensure_count, ensure_matrix
from .base import (
    BaseFeatureMap,
    FeatureMatrix,
    KernelMode,
    Side,
    exponentiate_checked,
    softmax_log_prefactor,
)
from .params import DiscreteFamily, DiscreteParams, ShiftSpec
from .shift import apply_shift


@dataclass(frozen=True, eq=False)
class DiscreteSample:
    """M x d non-negative integer counts; row m is one omega."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.ndim != 2 or counts.shape[0] < 1 or counts.shape[1] < 1:
            raise InvalidArgumentError(f"counts must be a non-empty matrix, got {counts.shape}")
        if counts.min() < 0:
            raise InvalidArgumentError("counts must be non-negative")
        counts.setflags(write=False)
        object.__setattr__(self, 'counts', counts)

    @property
    def count(self) -> int:
        return self.counts.shape[0]

    @property
    def dim(self) -> int:
        return self.counts.shape[1]


def sample_discrete(rng: RngState, params: DiscreteParams, M: int, d: int) -> DiscreteSample:
    """
    Draw M x d i.i.d. counts from Poisson(lam) or Geometric(p) on {0, 1, ...}.

    Args:
        rng: Random stream
        params: Discrete law
        M: Number of features
        d: Dimension

    Returns:
        DiscreteSample
    """
    M = ensure_count(M, 'M')
    d = ensure_count(d, 'd')
    if params.family is DiscreteFamily.POISSON:
        counts = rng.generator.poisson(params.lam, size=(M, d))
    else:
        # numpy's geometric counts trials (support 1, 2, ...); shift to failures
        counts = rng.generator.geometric(params.p, size=(M, d)) - 1
    return DiscreteSample(counts=counts)


def discrete_log_weights(params: DiscreteParams, sample: DiscreteSample) -> np.ndarray:
    """-1/2 sum_l [log omega_l! + log p_omega_l] for every sampled row, length M."""
    counts = sample.counts
    per_coordinate = gammaln(counts + 1.0) + params.log_pmf(counts)
    return -0.5 * per_coordinate.sum(axis=1)


def discrete_log_features(
    X: np.ndarray,
    params: DiscreteParams,
    sample: DiscreteSample,
    kernel_mode: KernelMode = KernelMode.GAUSSIAN
) -> tuple:
    """
    Log-magnitude and sign of the DIRF features, both L x M.

    Returns:
        (log_abs, sign) with sign in {-1, 0, +1}; sign 0 marks exact zeros
    """
    X = ensure_matrix(X, 'X')
    if sample.dim != X.shape[1]:
        raise InvalidArgumentError(
            f"dimension mismatch: inputs d={X.shape[1]}, sample d={sample.dim}"
        )
    omega = sample.counts.astype(float)
    abs_x = np.abs(X)
    zero = abs_x == 0
    safe_log = np.log(np.where(zero, 1.0, abs_x))

    # sum_l omega_l log|x_l|; zero coordinates are handled through hit counts
    log_abs = safe_log @ omega.T
    zero_hits = zero.astype(float) @ (omega > 0).T.astype(float)
    negative_power = (X < 0).astype(float) @ omega.T

    log_abs = log_abs + discrete_log_weights(params, sample)[None, :]
    if KernelMode(kernel_mode) is KernelMode.GAUSSIAN:
        log_abs = log_abs - softmax_log_prefactor(X)[:, None]

    sign = np.where(np.mod(negative_power, 2.0) > 0.5, -1.0, 1.0)
    sign = np.where(zero_hits > 0, 0.0, sign)
    log_abs = np.where(zero_hits > 0, -np.inf, log_abs)
    return log_abs, sign


def featurize_discrete(
    X: np.ndarray,
    params: DiscreteParams,
    sample: DiscreteSample,
    kernel_mode: KernelMode = KernelMode.GAUSSIAN
) -> FeatureMatrix:
    """
    Evaluate DIRF features on every row of X.

    Args:
        X: L x d inputs
        params: Discrete law the sample was drawn from
        sample: Drawn counts
        kernel_mode: gaussian, or softmax (drops the exp(-||x||^2 / 2) factor)

    Returns:
        Real FeatureMatrix (side first; f^(1) = f^(2))

    Raises:
        InvalidArgumentError: On dimension mismatch
        NumericOverflowError: If a feature is not finite
    """
    log_abs, sign = discrete_log_features(X, params, sample, kernel_mode)
    values = sign * exponentiate_checked(log_abs, 'DIRF')
    return FeatureMatrix(values=values, side=Side.FIRST, kernel_mode=KernelMode(kernel_mode))


class DiscreteFeatureMap(BaseFeatureMap):
    """
    PoisRF/GeomRF features bound to one discrete sample.

    With a shift the inputs are translated (and clamped) first; in softmax
    mode the rescaling uses the unshifted inputs because the softmax kernel
    is not translation invariant.
    """

    def __init__(
        self,
        params: DiscreteParams,
        sample: DiscreteSample,
        kernel_mode: KernelMode = KernelMode.GAUSSIAN,
        shift: Optional[ShiftSpec] = None
    ):
        super().__init__(kernel_mode)
        self.params = params
        self.sample = sample
        self.shift = shift

    @property
    def feature_count(self) -> int:
        return self.sample.count

    @property
    def dim(self) -> int:
        return self.sample.dim

    @property
    def is_complex(self) -> bool:
        return False

    def featurize(self, X: np.ndarray, side: Side) -> FeatureMatrix:
        X = ensure_matrix(X, 'X')
        if self.shift is None:
            features = featurize_discrete(X, self.params, self.sample, self.kernel_mode)
            return FeatureMatrix(features.values, Side(side), self.kernel_mode)

        log_abs, sign = discrete_log_features(
            apply_shift(X, self.shift), self.params, self.sample, KernelMode.GAUSSIAN
        )
        if self.kernel_mode is KernelMode.SOFTMAX:
            log_abs = log_abs + softmax_log_prefactor(X)[:, None]
        values = sign * exponentiate_checked(log_abs, 'DIRF')
        return FeatureMatrix(values=values, side=Side(side), kernel_mode=self.kernel_mode)
