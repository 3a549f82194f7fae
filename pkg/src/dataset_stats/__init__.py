"""
Dataset statistics module.

O(Ld) set averages standing in for per-pair quantities.
"""

from .pair import PairStats
from .aggregates import DatasetStats, compute_stats, pair_stats_from_dataset

__all__ = [
    'PairStats',
    'DatasetStats',
    'compute_stats',
    'pair_stats_from_dataset',
]
