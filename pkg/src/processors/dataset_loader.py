"""
Dataset Loader Module

Reads plain numeric CSV files into labeled datasets or feature matrices,
and mechanism objects from JSON.
"""

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np

from ..config.patterns import get_patterns
from ..core.exceptions import DataIOError, InvalidArgumentError
from ..core.logging_config import get_logger
from ..core.rng import RngState
from ..mechanisms.params import MechanismSpec
from ..validators.array_validator import ensure_matrix

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """
    Objects with integer class labels.

    Labels are indices in [0, n_classes).
    """

    objects: np.ndarray
    labels: np.ndarray
    n_classes: int

    def __post_init__(self):
        objects = ensure_matrix(self.objects, 'objects')
        labels = np.asarray(self.labels).reshape(-1)
        if labels.shape[0] != objects.shape[0]:
            raise InvalidArgumentError(
                f"{objects.shape[0]} objects but {labels.shape[0]} labels"
            )
        if not np.all(np.equal(np.mod(labels, 1), 0)):
            raise InvalidArgumentError("labels must be integers")
        labels = labels.astype(np.int64)
        if self.n_classes < 1 or labels.min() < 0 or labels.max() >= self.n_classes:
            raise InvalidArgumentError(f"labels must lie in [0, {self.n_classes})")
        object.__setattr__(self, 'objects', objects)
        object.__setattr__(self, 'labels', labels)
        object.__setattr__(self, 'n_classes', int(self.n_classes))

    @property
    def size(self) -> int:
        return self.objects.shape[0]

    @property
    def dim(self) -> int:
        return self.objects.shape[1]

    def one_hot(self) -> np.ndarray:
        """size x n_classes indicator matrix of the labels."""
        return np.eye(self.n_classes)[self.labels]

    def subset(self, indices: np.ndarray) -> 'LabeledDataset':
        return LabeledDataset(self.objects[indices], self.labels[indices], self.n_classes)


def _read_numeric_rows(path: str) -> Tuple[List[List[float]], Optional[List[str]]]:
    file_path = Path(path)
    if not file_path.is_file():
        raise DataIOError(f"CSV file not found: {path}", path=str(path))

    patterns = get_patterns()
    try:
        with open(file_path, newline='') as handle:
            rows = [row for row in csv.reader(handle) if any(cell.strip() for cell in row)]
    except (OSError, UnicodeDecodeError, csv.Error) as e:
        raise DataIOError(f"Cannot read {path}: {e}", path=str(path))

    if not rows:
        raise DataIOError(f"CSV file is empty: {path}", path=str(path))

    header = None
    if patterns.is_header_row(rows[0]):
        header = [cell.strip() for cell in rows[0]]
        rows = rows[1:]
    if not rows:
        raise DataIOError(f"CSV file has a header but no data: {path}", path=str(path))

    width = len(rows[0])
    values = []
    for number, row in enumerate(rows, start=2 if header else 1):
        if len(row) != width:
            raise DataIOError(f"{path}:{number}: expected {width} columns, got {len(row)}", path=str(path))
        if patterns.is_header_row(row):
            raise DataIOError(f"{path}:{number}: non-numeric cell", path=str(path))
        values.append([float(cell) for cell in row])
    return values, header


def load_feature_csv(path: str) -> np.ndarray:
    """
    Load a numeric CSV whose every column is a feature.

    Args:
        path: File path (an optional non-numeric first row is a header)

    Returns:
        L x d matrix

    Raises:
        DataIOError: If the file is missing or malformed
    """
    values, _ = _read_numeric_rows(path)
    try:
        matrix = ensure_matrix(np.array(values, dtype=float), 'features')
    except InvalidArgumentError as e:
        raise DataIOError(f"{path}: {e}", path=str(path))
    logger.info(f"Loaded {matrix.shape[0]} rows x {matrix.shape[1]} features from {path}")
    return matrix


def load_labeled_csv(path: str, n_classes: Optional[int] = None) -> LabeledDataset:
    """
    Load a numeric CSV whose last column is the integer class label.

    Args:
        path: File path
        n_classes: Class count (defaults to max label + 1)

    Returns:
        LabeledDataset

    Raises:
        DataIOError: If the file is missing or malformed
        InvalidArgumentError: If labels exceed n_classes
    """
    values, _ = _read_numeric_rows(path)
    table = np.array(values, dtype=float)
    if table.shape[1] < 2:
        raise DataIOError(f"{path}: need at least one feature column and a label column", path=str(path))

    labels = table[:, -1]
    if not np.all(np.equal(np.mod(labels, 1), 0)) or labels.min() < 0:
        raise DataIOError(f"{path}: labels must be non-negative integers", path=str(path))
    if not np.all(np.isfinite(table[:, :-1])):
        raise DataIOError(f"{path}: features must be finite", path=str(path))
    labels = labels.astype(np.int64)
    n = int(labels.max()) + 1 if n_classes is None else int(n_classes)

    dataset = LabeledDataset(objects=table[:, :-1], labels=labels, n_classes=n)
    logger.info(f"Loaded {dataset.size} objects, d={dataset.dim}, {dataset.n_classes} classes from {path}")
    return dataset


def train_test_split(
    dataset: LabeledDataset,
    fraction: float,
    rng: RngState
) -> Tuple[LabeledDataset, Optional[LabeledDataset]]:
    """
    Randomly hold out round(fraction * L) objects.

    At least one object always stays in the first part; the held-out part
    is None when it would be empty.

    Returns:
        (kept, held_out)
    """
    if not 0 <= fraction < 1:
        raise InvalidArgumentError(f"fraction must lie in [0, 1), got {fraction!r}")
    count = min(int(round(fraction * dataset.size)), dataset.size - 1)
    order = rng.generator.permutation(dataset.size)
    if count <= 0:
        return dataset.subset(np.sort(order)), None
    held = np.sort(order[:count])
    kept = np.sort(order[count:])
    return dataset.subset(kept), dataset.subset(held)


def load_mechanism_json(path: str, dim: Optional[int] = None) -> MechanismSpec:
    """
    Read a mechanism object as written in result files.

    Args:
        path: JSON file holding one object with at least 'kind'
        dim: Input dimension, needed when the object fixes A

    Returns:
        MechanismSpec

    Raises:
        DataIOError: If the file is missing or not a JSON object
        InvalidArgumentError: On unknown kinds or inconsistent fields
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise DataIOError(f"Mechanism file not found: {path}", path=str(path))
    try:
        with open(file_path, encoding='utf-8') as handle:
            data = json.load(handle)
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as e:
        raise DataIOError(f"Cannot read {path}: {e}", path=str(path))
    if not isinstance(data, dict):
        raise DataIOError(f"{path}: expected a JSON object", path=str(path))
    try:
        spec = MechanismSpec.from_dict(data, dim)
    except (TypeError, ValueError) as e:
        raise InvalidArgumentError(f"{path}: {e}")
    logger.info(f"Loaded mechanism {spec.kind.value} from {path}")
    return spec
