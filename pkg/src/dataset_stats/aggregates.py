"""
Set-averaged statistics for parameter fitting.

Averages over all L_x * L_y pairs factorize into per-set column means, so
every field costs O((L_x + L_y) d) and the pairwise loop is never formed.
"""

from dataclasses import dataclass

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..validators.array_validator import ensure_pair
from .pair import PairStats


@dataclass(frozen=True, eq=False)
class DatasetStats:
    """Pair-averaged norms and products of two sets {x_i}, {y_j}."""

    mean_sq_norm_x: float
    mean_sq_norm_y: float
    mean_sq_norm_sum_plus: float
    mean_sq_norm_sum_minus: float
    mean_dot: float
    mean_sum_sq_prod: float
    mean_abs_prod: np.ndarray
    count_x: int
    count_y: int
    d: int

    def mean_sq_norm_sum(self, s: int) -> float:
        """Average of ||x_i + s y_j||^2 over all pairs."""
        if s == 1:
            return self.mean_sq_norm_sum_plus
        if s == -1:
            return self.mean_sq_norm_sum_minus
        raise InvalidArgumentError(f"s must be -1 or +1, got {s!r}")

    def to_dict(self) -> dict:
        return {
            'mean_sq_norm_x': self.mean_sq_norm_x,
            'mean_sq_norm_y': self.mean_sq_norm_y,
            'mean_sq_norm_sum_plus': self.mean_sq_norm_sum_plus,
            'mean_sq_norm_sum_minus': self.mean_sq_norm_sum_minus,
            'mean_dot': self.mean_dot,
            'mean_sum_sq_prod': self.mean_sum_sq_prod,
            'mean_abs_prod': [float(v) for v in self.mean_abs_prod],
            'count_x': self.count_x,
            'count_y': self.count_y,
            'd': self.d,
        }


def compute_stats(X: np.ndarray, Y: np.ndarray) -> DatasetStats:
    """
    Compute the pair averages from column means.

    mean ||x_i + s y_j||^2 = mean ||x||^2 + 2s (mean x)^T (mean y) + mean ||y||^2
    mean sum_l x_l^2 y_l^2 = sum_l mean(x_l^2) mean(y_l^2)
    mean |x_l y_l|        = mean|x_l| mean|y_l|

    Args:
        X: L_x x d
        Y: L_y x d

    Returns:
        DatasetStats

    Raises:
        InvalidArgumentError: If a set is empty or dimensions differ
    """
    X, Y = ensure_pair(X, Y)
    sq_x = X * X
    sq_y = Y * Y
    mean_sq_norm_x = float(sq_x.sum(axis=1).mean())
    mean_sq_norm_y = float(sq_y.sum(axis=1).mean())
    mean_dot = float(X.mean(axis=0) @ Y.mean(axis=0))

    return DatasetStats(
        mean_sq_norm_x=mean_sq_norm_x,
        mean_sq_norm_y=mean_sq_norm_y,
        mean_sq_norm_sum_plus=max(mean_sq_norm_x + mean_sq_norm_y + 2 * mean_dot, 0.0),
        mean_sq_norm_sum_minus=max(mean_sq_norm_x + mean_sq_norm_y - 2 * mean_dot, 0.0),
        mean_dot=mean_dot,
        mean_sum_sq_prod=float(sq_x.mean(axis=0) @ sq_y.mean(axis=0)),
        mean_abs_prod=np.abs(X).mean(axis=0) * np.abs(Y).mean(axis=0),
        count_x=X.shape[0],
        count_y=Y.shape[0],
        d=X.shape[1],
    )


def pair_stats_from_dataset(stats: DatasetStats) -> PairStats:
    """View the averages as the statistics of one representative pair."""
    return PairStats(
        sq_norm_x=stats.mean_sq_norm_x,
        sq_norm_y=stats.mean_sq_norm_y,
        sq_norm_sum_plus=stats.mean_sq_norm_sum_plus,
        sq_norm_sum_minus=stats.mean_sq_norm_sum_minus,
        dot_xy=stats.mean_dot,
        sum_sq_prod=stats.mean_sum_sq_prod,
        abs_prod=stats.mean_abs_prod,
        d=stats.d,
    )
