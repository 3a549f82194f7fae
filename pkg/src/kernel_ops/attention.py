"""
FAVOR++ linear attention.

Approximates bidirectional softmax attention with positive random
features: queries and keys are scaled by d^(-1/4), A is set from their
set-averaged statistics and the L x L attention matrix is never formed.
"""

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import DegenerateDenominatorError, InvalidArgumentError
from ..core.logging_config import get_logger
from ..core.rng import RngState
from ..dataset_stats.aggregates import compute_stats
from ..mechanisms.base import KernelMode, Side
from ..mechanisms.gerf import gerf_log_features
from ..mechanisms.params import make_gerf_params
from ..projections.ensemble import EnsembleMode, sample_projections
from ..validators.array_validator import ensure_count, ensure_matrix
from ..variance.optimizers import optimal_A_oprf
from .exact import exact_softmax_attention, relative_frobenius_error

logger = get_logger(__name__)


class AttentionMode(str, Enum):
    """Feature mechanism and projection ensemble of the attention estimate."""

    OPRF_ORTHO = 'oprf_ortho'
    OPRF_IID = 'oprf_iid'
    POSRF_ORTHO = 'posrf_ortho'
    POSRF_IID = 'posrf_iid'

    @classmethod
    def parse(cls, value) -> 'AttentionMode':
        """Accept an AttentionMode or its name."""
        try:
            return cls(value)
        except ValueError:
            valid = ', '.join(mode.value for mode in cls)
            raise InvalidArgumentError(f"unknown attention mode {value!r}; expected one of: {valid}")

    @property
    def orthogonal(self) -> bool:
        return self in (AttentionMode.OPRF_ORTHO, AttentionMode.POSRF_ORTHO)

    @property
    def optimal(self) -> bool:
        return self in (AttentionMode.OPRF_ORTHO, AttentionMode.OPRF_IID)


@dataclass(frozen=True, eq=False)
class AttentionInputs:
    """Query, key and value matrices sharing L and d."""

    Q: np.ndarray
    K: np.ndarray
    V: np.ndarray

    def __post_init__(self):
        Q = ensure_matrix(self.Q, 'Q')
        K = ensure_matrix(self.K, 'K', dim=Q.shape[1])
        V = ensure_matrix(self.V, 'V')
        if not Q.shape[0] == K.shape[0] == V.shape[0]:
            raise InvalidArgumentError(
                f"Q, K and V must have the same number of rows, got {Q.shape[0]}, {K.shape[0]}, {V.shape[0]}"
            )
        object.__setattr__(self, 'Q', Q)
        object.__setattr__(self, 'K', K)
        object.__setattr__(self, 'V', V)

    @property
    def length(self) -> int:
        return self.Q.shape[0]

    @property
    def dim(self) -> int:
        return self.Q.shape[1]


def _check_denominator(denominator: np.ndarray) -> None:
    bad = ~(np.isfinite(denominator) & (denominator > 0))
    if bad.any():
        row = int(np.argmax(bad))
        raise DegenerateDenominatorError(
            f"attention normaliser is {denominator[row]!r} in row {row}", row=row
        )


def attention_features(
    inp: AttentionInputs,
    M: int,
    rng: RngState,
    mode: Union[AttentionMode, str] = AttentionMode.OPRF_ORTHO
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Stabilized softmax-mode feature matrices (Phi_Q, Phi_K), both L x M.

    Query rows are divided by their own maximum and all key rows by the
    global key maximum; both constants cancel in the attention ratio.
    """
    mode = AttentionMode.parse(mode)
    M = ensure_count(M, 'M')
    d = inp.dim
    scale = d ** -0.25
    x = scale * inp.Q
    y = scale * inp.K

    if mode.optimal:
        A = optimal_A_oprf(compute_stats(x, y).mean_sq_norm_sum_plus, d)
    else:
        A = 0.0
    params = make_gerf_params(A, 1, d)
    ensemble_mode = EnsembleMode.ORTHOGONAL if mode.orthogonal else EnsembleMode.IID
    ensemble = sample_projections(rng, M, d, ensemble_mode)

    log_q = gerf_log_features(x, params, ensemble, Side.FIRST, KernelMode.SOFTMAX)
    log_k = gerf_log_features(y, params, ensemble, Side.SECOND, KernelMode.SOFTMAX)
    phi_q = np.exp(log_q - log_q.max(axis=1, keepdims=True))
    phi_k = np.exp(log_k - log_k.max())
    logger.debug(f"Attention features: mode={mode.value}, M={M}, A={A:.6g}")
    return phi_q, phi_k


def favorpp_attention(
    inp: AttentionInputs,
    M: int,
    rng: RngState,
    mode: Union[AttentionMode, str] = AttentionMode.OPRF_ORTHO
) -> np.ndarray:
    """
    Random-feature approximation of softmax(Q K^T / sqrt(d)) V.

    Args:
        inp: Queries, keys and values
        M: Number of random features
        rng: Random stream for the projections
        mode: oprf_ortho (FAVOR++), oprf_iid, posrf_ortho (FAVOR+) or posrf_iid

    Returns:
        L x d_v matrix

    Raises:
        DegenerateDenominatorError: If a normaliser is not positive and finite
    """
    phi_q, phi_k = attention_features(inp, M, rng, mode)
    numerator = phi_q @ (phi_k.T @ inp.V)
    denominator = phi_q @ phi_k.sum(axis=0)
    _check_denominator(denominator)
    return numerator / denominator[:, None]


@dataclass
class AttentionReportRow:
    """Error summary of one (mode, M) cell over all seeds."""

    mode: str
    M: int
    median_error: float
    iqr_error: float
    mean_time_s: float
    errors: List[float] = field(default_factory=list)

    def to_dict(self, include_timing: bool = False) -> dict:
        row = {
            'mode': self.mode,
            'M': self.M,
            'seeds': len(self.errors),
            'median_error': self.median_error,
            'iqr_error': self.iqr_error,
        }
        if include_timing:
            row['mean_time_s'] = self.mean_time_s
        return row


@dataclass
class AttentionReport:
    """Error table of an attention benchmark."""

    length: int
    dim: int
    rows: List[AttentionReportRow] = field(default_factory=list)

    def row(self, mode: Union[AttentionMode, str], M: int) -> AttentionReportRow:
        mode = AttentionMode.parse(mode).value
        for entry in self.rows:
            if entry.mode == mode and entry.M == M:
                return entry
        raise KeyError((mode, M))

    def records(self, include_timing: bool = False) -> List[dict]:
        return [entry.to_dict(include_timing) for entry in self.rows]

    def to_dict(self, include_timing: bool = False) -> dict:
        return {
            'L': self.length,
            'd': self.dim,
            'results': self.records(include_timing),
        }


def _seed_list(seeds: Union[int, Iterable[int]]) -> List[int]:
    if isinstance(seeds, (int, np.integer)):
        return list(range(ensure_count(seeds, 'seeds')))
    try:
        seeds = [int(s) for s in seeds]
    except (TypeError, ValueError):
        raise InvalidArgumentError(f"seeds must be integers, got {seeds!r}")
    if not seeds:
        raise InvalidArgumentError("seed list must not be empty")
    return seeds


def attention_error_report(
    inp: AttentionInputs,
    modes: Sequence[Union[AttentionMode, str]],
    Ms: Sequence[int],
    seeds: Union[int, Iterable[int]]
) -> AttentionReport:
    """
    Median and IQR of the relative Frobenius error per (mode, M).

    Seed k drives the projections of every cell through RngState(k), so
    modes are compared on paired draws.

    Args:
        inp: Attention inputs
        modes: Attention modes to compare
        Ms: Feature counts
        seeds: Seed count (0..n-1) or explicit seed list
    """
    if not modes or not Ms:
        raise InvalidArgumentError("modes and Ms must not be empty")
    seed_values = _seed_list(seeds)
    exact = exact_softmax_attention(inp.Q, inp.K, inp.V)
    report = AttentionReport(length=inp.length, dim=inp.dim)

    for mode in (AttentionMode.parse(m) for m in modes):
        for M in Ms:
            M = ensure_count(M, 'M')
            errors, times = [], []
            for seed in seed_values:
                started = time.perf_counter()
                approx = favorpp_attention(inp, M, RngState(seed), mode)
                times.append(time.perf_counter() - started)
                errors.append(relative_frobenius_error(approx, exact))
            q25, q50, q75 = np.percentile(errors, [25, 50, 75])
            report.rows.append(AttentionReportRow(
                mode=mode.value,
                M=M,
                median_error=float(q50),
                iqr_error=float(q75 - q25),
                mean_time_s=float(np.mean(times)),
                errors=[float(e) for e in errors],
            ))
            logger.info(f"Attention {mode.value} M={M}: median error {q50:.4g}")
    return report
