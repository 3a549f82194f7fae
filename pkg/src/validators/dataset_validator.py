"""
Dataset Validator.

Validates labelled datasets used by the kernel-regression classifier.
"""

from typing import Any

import numpy as np

from ..core.logging_config import get_logger
from ..core.interfaces import IValidator

logger = get_logger(__name__)


class DatasetValidator(IValidator):
    """
    Validates a LabeledDataset.

    Requires at least one object, finite features, one label per object and
    every label inside [0, n).
    """

    def validate(self, data: Any) -> bool:
        """
        Validate dataset structure.

        Args:
            data: Object exposing objects, labels and n_classes

        Returns:
            True if structure is valid, False otherwise
        """
        objects = getattr(data, 'objects', None)
        labels = getattr(data, 'labels', None)
        n_classes = getattr(data, 'n_classes', None)
        if objects is None or labels is None or n_classes is None:
            logger.warning("Dataset is missing objects, labels or n_classes")
            return False

        objects = np.asarray(objects)
        labels = np.asarray(labels)
        if objects.ndim != 2 or objects.shape[0] < 1:
            logger.warning(f"Dataset objects must be a non-empty matrix, got {objects.shape}")
            return False
        if labels.shape != (objects.shape[0],):
            logger.warning(
                f"Expected {objects.shape[0]} labels, got array of shape {labels.shape}"
            )
            return False
        if not np.all(np.isfinite(objects)):
            logger.warning("Dataset objects contain non-finite values")
            return False
        if labels.size and (labels.min() < 0 or labels.max() >= n_classes):
            logger.warning(f"Labels must lie in [0, {n_classes})")
            return False
        return True
