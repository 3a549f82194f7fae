"""
Monte-Carlo counterparts of the analytic variances.

Used to check the closed forms against sampled feature products.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..core.rng import RngState
from ..mechanisms.base import Side
from ..mechanisms.factory import build_feature_map, draw_randomness
from ..mechanisms.params import MechanismSpec
from ..validators.array_validator import ensure_count

_DRAW_CHUNK = 1 << 16


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Sample mean, variance (ddof=1) and standard error of Re(f1 f2)."""

    mean: float
    variance: float
    std_error: float
    draws: int


def feature_products(
    spec: MechanismSpec,
    x: np.ndarray,
    y: np.ndarray,
    M: int,
    rng: RngState,
    orthogonal: bool = False
) -> np.ndarray:
    """
    Re(f1(omega_m, x) f2(omega_m, y)) for M independent draws.

    Draws are generated in chunks; each chunk takes its own child stream
    so the result does not depend on the chunk size.

    Args:
        spec: Resolved mechanism
        x: d-vector
        y: d-vector
        M: Number of draws
        rng: Random stream
        orthogonal: Use orthogonal blocks (GERF family only)

    Returns:
        Length-M real array whose mean estimates the kernel
    """
    M = ensure_count(M, 'M')
    x = np.asarray(x, dtype=float).reshape(1, -1)
    y = np.asarray(y, dtype=float).reshape(1, -1)
    if x.shape != y.shape:
        raise InvalidArgumentError(f"x and y differ in length: {x.shape[1]} vs {y.shape[1]}")
    d = x.shape[1]

    out = np.empty(M)
    for index, start in enumerate(range(0, M, _DRAW_CHUNK)):
        size = min(_DRAW_CHUNK, M - start)
        randomness = draw_randomness(spec, rng.derive(index), size, d, orthogonal)
        feature_map = build_feature_map(spec, randomness)
        f1 = feature_map.featurize(x, Side.FIRST).values[0]
        f2 = feature_map.featurize(y, Side.SECOND).values[0]
        out[start:start + size] = np.real(f1 * f2)
    return out


def empirical_variance(
    spec: MechanismSpec,
    x: np.ndarray,
    y: np.ndarray,
    M: int,
    rng: RngState,
    orthogonal: bool = False
) -> MonteCarloEstimate:
    """Sample moments of the single-draw estimator Re(f1 f2) over M draws."""
    samples = feature_products(spec, x, y, M, rng, orthogonal)
    variance = float(np.var(samples, ddof=1)) if samples.size > 1 else 0.0
    return MonteCarloEstimate(
        mean=float(samples.mean()),
        variance=variance,
        std_error=float(np.sqrt(variance / samples.size)),
        draws=int(samples.size),
    )


def bootstrap_interval(
    samples: np.ndarray,
    level: float = 0.99,
    n_boot: int = 200,
    rng: RngState = None
) -> Tuple[float, float]:
    """
    Percentile bootstrap interval of the sample variance.

    Args:
        samples: 1-D draws
        level: Coverage in (0, 1)
        n_boot: Bootstrap replicates
        rng: Random stream (seed 0 when omitted)

    Returns:
        (lower, upper)
    """
    samples = np.asarray(samples, dtype=float).reshape(-1)
    if samples.size < 2:
        raise InvalidArgumentError("bootstrap needs at least two samples")
    if not 0 < level < 1:
        raise InvalidArgumentError(f"level must lie in (0, 1), got {level!r}")
    n_boot = ensure_count(n_boot, 'n_boot')
    generator = (rng or RngState(0)).generator

    replicates = np.empty(n_boot)
    for b in range(n_boot):
        resample = samples[generator.integers(0, samples.size, size=samples.size)]
        replicates[b] = np.var(resample, ddof=1)
    tail = 100.0 * (1.0 - level) / 2.0
    lower, upper = np.percentile(replicates, [tail, 100.0 - tail])
    return float(lower), float(upper)
