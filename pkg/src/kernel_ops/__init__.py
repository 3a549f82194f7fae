"""
Kernel operations module.

Exact kernel oracles, random-feature operator application and FAVOR++
attention.
"""

from .exact import (
    KernelKind,
    exact_kernel_matrix,
    exact_softmax_attention,
    nadaraya_watson_scores,
    relative_frobenius_error,
)
from .operator import rf_apply
from .attention import (
    AttentionInputs,
    AttentionMode,
    AttentionReport,
    AttentionReportRow,
    attention_error_report,
    attention_features,
    favorpp_attention,
)

__all__ = [
    'KernelKind',
    'exact_kernel_matrix',
    'exact_softmax_attention',
    'nadaraya_watson_scores',
    'relative_frobenius_error',
    'rf_apply',
    'AttentionInputs',
    'AttentionMode',
    'AttentionReport',
    'AttentionReportRow',
    'attention_error_report',
    'attention_features',
    'favorpp_attention',
]
