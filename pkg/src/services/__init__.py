"""
Services layer.

Orchestrates the library operations behind the CLI and returns Results.
"""

from .variance_service import (
    BenchEntry,
    BenchResult,
    VarianceBenchmarkService,
    as_spec,
    fairness_log_offset,
    variance_benchmark,
)
from .classification_service import (
    ClassificationReport,
    ClassificationService,
    classify,
    default_sigma_grid,
    feature_budget,
    predict_labels,
)
from .attention_service import AttentionBenchmarkService, random_attention_inputs

__all__ = [
    'BenchEntry',
    'BenchResult',
    'VarianceBenchmarkService',
    'as_spec',
    'fairness_log_offset',
    'variance_benchmark',
    'ClassificationReport',
    'ClassificationService',
    'classify',
    'default_sigma_grid',
    'feature_budget',
    'predict_labels',
    'AttentionBenchmarkService',
    'random_attention_inputs',
]
