"""
Closed-form variances of the random-feature estimators.

Each formula returns a VarianceValue (leading term and K^2 in log space)
for the Gaussian kernel. The softmax-kernel variance of the same features
is the Gaussian one times exp(||x||^2 + ||y||^2).
"""

import cmath
import math
from typing import Optional

import numpy as np

from ..core.exceptions import InvalidArgumentError, InvalidParameterError
from ..core.logging_config import get_logger
from ..mechanisms.base import KernelMode
from ..mechanisms.params import DiscreteFamily, MechanismKind, MechanismSpec
from ..mechanisms.shift import apply_shift
from ..validators.array_validator import ensure_pair
from .bessel import log_bessel_i0
from .stats import PairStats, VarianceValue, log_diff_exp

logger = get_logger(__name__)

_LOG_HALF = math.log(0.5)
_CHUNK_ELEMENTS = 1 << 22


def gerf_log_leading(A: complex, s: int, d: int, sq_norm_x, sq_norm_y, sq_norm_sum):
    """
    log of the leading (positive) term of the GERF variance.

    Works elementwise on arrays of norms. With z = ||x + s y||^2,

        leading = 1/2 exp(-(s+1)(||x||^2 + ||y||^2))
                  * (Re(a1 exp(a2 z)) + a3 exp(a4 z))

    where a1 = (1 + 16A^2/(1-8A))^(d/2), a2 = s + s/(1-8A),
    a3 = (1 + 16|A|^2/(1-8 Re A))^(d/2) and
    a4 = s/2 + (s + 2|1-4A|) / (2(1-8 Re A)).

    Raises:
        InvalidParameterError: If Re(1 - 8A) <= 0 or s is not a sign
    """
    A = complex(A)
    if s not in (-1, 1):
        raise InvalidParameterError(f"s must be -1 or +1, got {s!r}")
    denom = 1 - 8 * A
    if denom.real <= 0:
        raise InvalidParameterError(f"Re(1 - 8A) must be positive, got A={A}")
    re_denom = denom.real

    log_a1 = (d / 2.0) * cmath.log(1 + 16 * A * A / denom)
    a2 = s + s / denom
    log_a3 = (d / 2.0) * math.log1p(16 * abs(A) ** 2 / re_denom)
    a4 = s / 2.0 + (s + 2 * abs(1 - 4 * A)) / (2 * re_denom)

    z = np.asarray(sq_norm_sum, dtype=float)
    oscillating = log_a1 + a2 * z
    l1 = np.real(oscillating)
    phase = np.imag(oscillating)
    l2 = log_a3 + a4 * z

    top = np.maximum(l1, l2)
    inner = np.exp(l1 - top) * np.cos(phase) + np.exp(l2 - top)
    with np.errstate(divide='ignore', invalid='ignore'):
        log_inner = np.where(inner > 0, top + np.log(np.where(inner > 0, inner, 1.0)), -np.inf)

    norms = np.asarray(sq_norm_x, dtype=float) + np.asarray(sq_norm_y, dtype=float)
    out = _LOG_HALF - (s + 1) * norms + log_inner
    return out if np.ndim(out) else float(out)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0:
        raise InvalidParameterError(f"Poisson rate must be positive, got {lam!r}")
    return lam


def _check_p(p: float) -> float:
    p = float(p)
    if not 0 < p < 1:
        raise InvalidParameterError(f"geometric p must lie in (0, 1), got {p!r}")
    return p


def var_trig(stats: PairStats) -> VarianceValue:
    """Variance of TrigRF: 1/2 (1 - K^2)^2, i.e. 1/2 (1 + K^4) - K^2."""
    log_k_sq = stats.log_kernel_sq
    return VarianceValue(_LOG_HALF + math.log1p(math.exp(2 * log_k_sq)), log_k_sq)


def var_pos(stats: PairStats) -> VarianceValue:
    """Variance of PosRF: exp(4 x^T y) - K^2."""
    return VarianceValue(4.0 * stats.dot_xy, stats.log_kernel_sq)


def var_gerf(A: complex, s: int, stats: PairStats) -> VarianceValue:
    """
    Variance of GERF with free parameters (A, s).

    Args:
        A: Complex parameter with Re(1 - 8A) > 0
        s: Sign in {-1, +1}
        stats: Pair statistics

    Returns:
        VarianceValue

    Raises:
        InvalidParameterError: If Re(1 - 8A) <= 0
    """
    log_leading = gerf_log_leading(
        A, s, stats.d, stats.sq_norm_x, stats.sq_norm_y, stats.sq_norm_sum(s)
    )
    return VarianceValue(log_leading, stats.log_kernel_sq)


def var_pois(lam: float, stats: PairStats) -> VarianceValue:
    """
    Variance of PoisRF with rate lam.

    exp(lam d + sum_l x_l^2 y_l^2 / lam - ||x||^2 - ||y||^2) - K^2

    Raises:
        InvalidParameterError: If lam <= 0
    """
    lam = _check_lambda(lam)
    log_leading = lam * stats.d + stats.sum_sq_prod / lam - stats.sq_norm_x - stats.sq_norm_y
    return VarianceValue(log_leading, stats.log_kernel_sq)


def var_geom(p: float, stats: PairStats) -> VarianceValue:
    """
    Variance of GeomRF with success probability p.

    p^(-d) exp(-||x||^2 - ||y||^2) prod_l I_0(2 |x_l y_l| / sqrt(1 - p)) - K^2

    Raises:
        InvalidParameterError: If p is outside (0, 1)
    """
    p = _check_p(p)
    bessel_args = 2.0 * stats.abs_prod / math.sqrt(1.0 - p)
    log_leading = (
        -stats.d * math.log(p)
        - stats.sq_norm_x
        - stats.sq_norm_y
        + float(np.sum(log_bessel_i0(bessel_args)))
    )
    return VarianceValue(log_leading, stats.log_kernel_sq)


def variance_for_spec(
    spec: MechanismSpec,
    stats: PairStats,
    log_softmax_factor: Optional[float] = None
) -> VarianceValue:
    """
    Analytic variance of a resolved mechanism on one pair.

    For plus kinds the stats must describe the shifted pair. In softmax mode
    the rescaling defaults to the one of the given stats; plus kinds pass
    ||x||^2 + ||y||^2 of the unshifted pair as log_softmax_factor.

    Raises:
        InvalidArgumentError: If the spec is missing fitted parameters
    """
    if not spec.is_resolved:
        raise InvalidArgumentError(f"{spec.kind.value} spec is missing fitted parameters")
    kind = spec.kind
    if kind is MechanismKind.TRIG:
        value = var_trig(stats)
    elif kind is MechanismKind.POS:
        value = var_pos(stats)
    elif kind.is_gerf_family:
        value = var_gerf(spec.gerf.A, spec.gerf.s, stats)
    elif spec.discrete.family is DiscreteFamily.POISSON:
        value = var_pois(spec.discrete.lam, stats)
    else:
        value = var_geom(spec.discrete.p, stats)

    if spec.kernel_mode is KernelMode.SOFTMAX:
        factor = stats.log_softmax_factor if log_softmax_factor is None else log_softmax_factor
        value = value.scaled(factor)
    return value


def _pairwise_log_leading(spec: MechanismSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    nx = np.einsum('ld,ld->l', X, X)[:, None]
    ny = np.einsum('ld,ld->l', Y, Y)[None, :]
    dots = X @ Y.T
    kind = spec.kind
    d = X.shape[1]

    if kind is MechanismKind.TRIG:
        log_k_sq = -(nx + ny - 2 * dots)
        return _LOG_HALF + np.log1p(np.exp(2 * log_k_sq))
    if kind is MechanismKind.POS:
        return 4.0 * dots
    if kind.is_gerf_family:
        A, s = spec.gerf.A, spec.gerf.s
        return gerf_log_leading(A, s, d, nx, ny, nx + ny + 2 * s * dots)

    params = spec.discrete
    if params.family is DiscreteFamily.POISSON:
        lam = params.lam
        sum_sq_prod = (X * X) @ (Y * Y).T
        return lam * d + sum_sq_prod / lam - nx - ny

    scale = 2.0 / math.sqrt(1.0 - params.p)
    abs_prod = np.abs(X[:, None, :] * Y[None, :, :])
    log_bessel = log_bessel_i0(scale * abs_prod).sum(axis=-1)
    return -d * math.log(params.p) - nx - ny + log_bessel


def pairwise_log_variance(spec: MechanismSpec, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """
    Log analytic variance for every pair (x_i, y_j).

    Rows of X are processed in chunks so the d-wide intermediate of the
    geometric formula stays bounded in memory. Plus kinds shift both sets
    with the spec's fitted shift first.

    Args:
        spec: Resolved mechanism
        X: L x d
        Y: L' x d

    Returns:
        L x L' array of log-variances (-inf where the variance is zero)
    """
    if not spec.is_resolved:
        raise InvalidArgumentError(f"{spec.kind.value} spec is missing fitted parameters")
    X, Y = ensure_pair(X, Y)
    X_raw, Y_raw = X, Y
    if spec.kind.is_plus:
        X, Y = apply_shift(X, spec.shift), apply_shift(Y, spec.shift)

    d = X.shape[1]
    rows = max(1, _CHUNK_ELEMENTS // max(1, Y.shape[0] * d))
    out = np.empty((X.shape[0], Y.shape[0]))
    ny_raw = np.einsum('ld,ld->l', Y_raw, Y_raw)[None, :]
    for start in range(0, X.shape[0], rows):
        block = slice(start, start + rows)
        Xb = X[block]
        sq_diff = (
            np.einsum('ld,ld->l', Xb, Xb)[:, None]
            + np.einsum('ld,ld->l', Y, Y)[None, :]
            - 2.0 * Xb @ Y.T
        )
        log_k_sq = -np.maximum(sq_diff, 0.0)
        log_var = log_diff_exp(_pairwise_log_leading(spec, Xb, Y), log_k_sq)
        if spec.kernel_mode is KernelMode.SOFTMAX:
            Xr = X_raw[block]
            log_var = log_var + np.einsum('ld,ld->l', Xr, Xr)[:, None] + ny_raw
        out[block] = log_var

    logger.debug(f"Pairwise variance for {spec.kind.value}: {out.shape[0]}x{out.shape[1]} pairs")
    return out
