"""
Processors module for input data.

Synthetic regimes, CSV ingestion and mechanism files.
"""

from .dataset_loader import (
    LabeledDataset,
    load_feature_csv,
    load_labeled_csv,
    load_mechanism_json,
    train_test_split,
)
from .regime_generator import Regime, RegimeKind, generate_regime

__all__ = [
    'LabeledDataset',
    'load_feature_csv',
    'load_labeled_csv',
    'load_mechanism_json',
    'train_test_split',
    'Regime',
    'RegimeKind',
    'generate_regime',
]
