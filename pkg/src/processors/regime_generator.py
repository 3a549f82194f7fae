"""
Regime Generator Module

Draws the paired input sets {x_i}, {y_j} of the variance benchmark.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..core.logging_config import get_logger
from ..core.rng import RngState
from ..validators.array_validator import ensure_count
from .dataset_loader import load_feature_csv

logger = get_logger(__name__)


class RegimeKind(str, Enum):
    """Input distributions."""

    NORMAL = 'normal'
    SPHERE = 'sphere'
    HETEROGEN = 'heterogen'
    CSV = 'csv'


@dataclass(frozen=True)
class Regime:
    """
    One input distribution with scale sigma.

    normal: x, y ~ N(0, sigma^2 I); sphere: uniform on the sphere of radius
    sigma; heterogen: x ~ N(0, sigma^2 I), y ~ N(sigma 1, sigma^2 I);
    csv: rows of a numeric file, scaled by sigma (d is taken from the file).
    """

    kind: RegimeKind
    sigma: float = 1.0
    d: int = 64
    L: int = 1024
    path: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, 'kind', RegimeKind(self.kind))
        if not self.sigma > 0:
            raise InvalidArgumentError(f"sigma must be positive, got {self.sigma!r}")
        ensure_count(self.d, 'd')
        ensure_count(self.L, 'L')
        if self.kind is RegimeKind.CSV and not self.path:
            raise InvalidArgumentError("csv regime requires a path")

    @property
    def name(self) -> str:
        return f"{self.kind.value}(sigma={self.sigma:g})"

    def to_dict(self) -> dict:
        data = {'kind': self.kind.value, 'sigma': self.sigma, 'd': self.d, 'L': self.L}
        if self.path:
            data['path'] = self.path
        return data


def generate_regime(rng: RngState, regime: Regime) -> Tuple[np.ndarray, np.ndarray]:
    """
    Draw two L x d sets from a regime.

    Args:
        rng: Random stream
        regime: Distribution to draw from

    Returns:
        (X, Y)

    Raises:
        DataIOError: If the csv file is missing or malformed
    """
    generator = rng.generator
    sigma, d, L = regime.sigma, regime.d, regime.L

    if regime.kind is RegimeKind.CSV:
        data = load_feature_csv(regime.path)
        X = data[generator.integers(0, data.shape[0], size=L)]
        Y = data[generator.integers(0, data.shape[0], size=L)]
        return sigma * X, sigma * Y

    X = generator.standard_normal((L, d))
    Y = generator.standard_normal((L, d))
    if regime.kind is RegimeKind.SPHERE:
        X = sigma * X / np.linalg.norm(X, axis=1, keepdims=True)
        Y = sigma * Y / np.linalg.norm(Y, axis=1, keepdims=True)
    elif regime.kind is RegimeKind.HETEROGEN:
        X = sigma * X
        Y = sigma * (Y + 1.0)
    else:
        X = sigma * X
        Y = sigma * Y

    logger.debug(f"Generated {regime.name}: L={L}, d={d}")
    return X, Y
