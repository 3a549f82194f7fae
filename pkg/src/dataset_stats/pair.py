"""
Per-pair statistics read by every variance formula.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..validators.array_validator import ensure_count


@dataclass(frozen=True, eq=False)
class PairStats:
    """
    The norms and products of (x, y) that every variance formula reads.

    Built either from one pair (from_pair) or from dataset averages
    (pair_stats_from_dataset); the formulas do not distinguish the two.
    """

    sq_norm_x: float
    sq_norm_y: float
    sq_norm_sum_plus: float
    sq_norm_sum_minus: float
    dot_xy: float
    sum_sq_prod: float
    abs_prod: np.ndarray
    d: int

    def __post_init__(self):
        abs_prod = np.array(self.abs_prod, dtype=float).reshape(-1)
        abs_prod.setflags(write=False)
        object.__setattr__(self, 'abs_prod', abs_prod)
        object.__setattr__(self, 'd', ensure_count(self.d, 'd'))
        if abs_prod.shape[0] != self.d:
            raise InvalidArgumentError(
                f"abs_prod has {abs_prod.shape[0]} entries, expected d={self.d}"
            )
        for name in ('sq_norm_x', 'sq_norm_y', 'sq_norm_sum_plus', 'sq_norm_sum_minus', 'sum_sq_prod'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite, got {value!r}")
            # rounding in factorized sums may leave tiny negatives
            object.__setattr__(self, name, max(value, 0.0))
        object.__setattr__(self, 'dot_xy', float(self.dot_xy))

    @classmethod
    def from_pair(cls, x: np.ndarray, y: np.ndarray) -> 'PairStats':
        """
        Statistics of a single pair of d-vectors.

        Raises:
            InvalidArgumentError: If the vectors are empty or differ in length
        """
        x = np.asarray(x, dtype=float).reshape(-1)
        y = np.asarray(y, dtype=float).reshape(-1)
        if x.shape[0] < 1 or x.shape != y.shape:
            raise InvalidArgumentError(f"x and y must be non-empty and equal length, got {x.shape}, {y.shape}")
        prod = x * y
        return cls(
            sq_norm_x=float(x @ x),
            sq_norm_y=float(y @ y),
            sq_norm_sum_plus=float((x + y) @ (x + y)),
            sq_norm_sum_minus=float((x - y) @ (x - y)),
            dot_xy=float(x @ y),
            sum_sq_prod=float(prod @ prod),
            abs_prod=np.abs(prod),
            d=x.shape[0],
        )

    def sq_norm_sum(self, s: int) -> float:
        """||x + s y||^2 for s in {-1, +1}."""
        if s == 1:
            return self.sq_norm_sum_plus
        if s == -1:
            return self.sq_norm_sum_minus
        raise InvalidArgumentError(f"s must be -1 or +1, got {s!r}")

    @property
    def log_kernel_sq(self) -> float:
        """log K(x, y)^2 for the Gaussian kernel."""
        return -self.sq_norm_sum_minus

    @property
    def log_softmax_factor(self) -> float:
        """log of exp(||x||^2 + ||y||^2), the squared Gaussian-to-softmax rescaling."""
        return self.sq_norm_x + self.sq_norm_y
