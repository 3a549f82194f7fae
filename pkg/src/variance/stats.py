"""
Log-domain variance values.

PairStats lives with the dataset statistics and is re-exported here.
"""

from dataclasses import dataclass

import numpy as np

from ..dataset_stats.pair import PairStats

__all__ = ['PairStats', 'VarianceValue', 'log_diff_exp']


def log_diff_exp(log_a, log_b):
    """
    log(exp(log_a) - exp(log_b)), elementwise, -inf where the difference is not positive.
    """
    log_a = np.asarray(log_a, dtype=float)
    log_b = np.asarray(log_b, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        gap = log_b - log_a
        out = log_a + np.log(-np.expm1(np.minimum(gap, 0.0)))
    out = np.where((gap >= 0) | np.isneginf(log_a), -np.inf, out)
    out = np.where(np.isneginf(log_b) & ~np.isneginf(log_a), log_a, out)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class VarianceValue:
    """
    A variance written as leading - K^2, both carried as logarithms.

    Leading terms reach e^100 and beyond in realistic regimes, so the
    difference is only formed in log space.
    """

    log_leading: float
    log_kernel_sq: float

    @property
    def log_variance(self) -> float:
        """log(leading - K^2); -inf for zero variance."""
        return log_diff_exp(self.log_leading, self.log_kernel_sq)

    @property
    def variance(self) -> float:
        """Linear-scale variance, inf when it does not fit a float."""
        with np.errstate(over='ignore'):
            return float(np.exp(self.log_variance))

    def scaled(self, log_factor: float) -> 'VarianceValue':
        """Multiply leading term and K^2 alike by exp(log_factor)."""
        return VarianceValue(self.log_leading + log_factor, self.log_kernel_sq + log_factor)
