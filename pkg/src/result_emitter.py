"""
Result Emitter Module

Writes benchmark, classification and generated-data results as JSON or CSV
with stable field order and 17-significant-digit floats, so that equal
results always produce identical bytes.
"""

import csv
import math
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Union

import numpy as np

from .core.exceptions import DataIOError, InvalidArgumentError
from .core.logging_config import get_logger

logger = get_logger(__name__)


class OutputFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'


class ResultEmitter:
    """
    Serializes result objects.

    A result is a dict, a list of dicts, or an object exposing
    to_dict(include_timing) and records(include_timing).
    """

    @staticmethod
    def format_float(value: float) -> str:
        """17 significant digits, enough to round-trip any double."""
        return format(float(value), '.17g')

    @staticmethod
    def _plain(value: Any) -> Any:
        """Convert numpy scalars, arrays and enums to plain Python values."""
        if isinstance(value, Enum):
            return value.value
        if isinstance(value, np.ndarray):
            return [ResultEmitter._plain(v) for v in value.tolist()]
        if isinstance(value, np.generic):
            return value.item()
        if isinstance(value, (list, tuple)):
            return [ResultEmitter._plain(v) for v in value]
        if isinstance(value, dict):
            return {str(k): ResultEmitter._plain(v) for k, v in value.items()}
        return value

    @staticmethod
    def _encode_scalar(value: Any) -> str:
        if value is None:
            return 'null'
        if isinstance(value, bool):
            return 'true' if value else 'false'
        if isinstance(value, int):
            return str(value)
        if isinstance(value, float):
            if not math.isfinite(value):
                return 'null'
            return ResultEmitter.format_float(value)
        if isinstance(value, complex):
            raise InvalidArgumentError("complex values must be split into real and imaginary fields")
        return _json_string(str(value))

    @staticmethod
    def to_json(data: Any, indent: int = 2) -> str:
        """
        Serialize to JSON text (insertion-ordered keys, trailing newline).

        Non-finite floats are written as null.
        """
        return ResultEmitter._encode(ResultEmitter._plain(data), indent, 0) + '\n'

    @staticmethod
    def _encode(value: Any, indent: int, level: int) -> str:
        pad = ' ' * (indent * (level + 1))
        close = ' ' * (indent * level)
        if isinstance(value, dict):
            if not value:
                return '{}'
            items = [f"{pad}{_json_string(k)}: {ResultEmitter._encode(v, indent, level + 1)}"
                     for k, v in value.items()]
            return '{\n' + ',\n'.join(items) + '\n' + close + '}'
        if isinstance(value, list):
            if not value:
                return '[]'
            items = [pad + ResultEmitter._encode(v, indent, level + 1) for v in value]
            return '[\n' + ',\n'.join(items) + '\n' + close + ']'
        return ResultEmitter._encode_scalar(value)

    @staticmethod
    def _csv_cell(value: Any) -> str:
        value = ResultEmitter._plain(value)
        if value is None:
            return ''
        if isinstance(value, float):
            return ResultEmitter.format_float(value) if math.isfinite(value) else str(value)
        if isinstance(value, (list, dict)):
            return ResultEmitter.to_json(value, indent=0).replace('\n', '')
        return str(value)

    @staticmethod
    def write_csv(records: List[Dict[str, Any]], output_path: Path) -> None:
        """Header row from the union of record keys (first-seen order), one row per record."""
        columns: List[str] = []
        for record in records:
            for key in record:
                if key not in columns:
                    columns.append(key)
        with open(output_path, 'w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(columns)
            for record in records:
                writer.writerow([ResultEmitter._csv_cell(record.get(c)) for c in columns])

    @staticmethod
    def write_json(data: Any, output_path: Path) -> None:
        with open(output_path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(ResultEmitter.to_json(data))


def _json_string(text: str) -> str:
    escaped = (
        text.replace('\\', '\\\\')
        .replace('"', '\\"')
        .replace('\n', '\\n')
        .replace('\r', '\\r')
        .replace('\t', '\\t')
    )
    return f'"{escaped}"'


def _payload(result: Any, include_timing: bool) -> Any:
    if hasattr(result, 'to_dict'):
        return result.to_dict(include_timing=include_timing)
    return result


def _records(result: Any, include_timing: bool) -> List[Dict[str, Any]]:
    if hasattr(result, 'records'):
        return result.records(include_timing=include_timing)
    if isinstance(result, dict):
        return [result]
    if isinstance(result, list) and all(isinstance(r, dict) for r in result):
        return result
    raise InvalidArgumentError("CSV output needs a dict, a list of dicts or a result with records()")


def emit_results(
    result: Any,
    fmt: Union[OutputFormat, str],
    path: Union[str, Path],
    include_timing: bool = False
) -> Path:
    """
    Write a result to disk.

    Args:
        result: Result object, dict or list of dicts
        fmt: json or csv
        path: Output file (parent directories are created)
        include_timing: Keep wall-time fields (makes output run-dependent)

    Returns:
        The written path

    Raises:
        DataIOError: If the file cannot be written
    """
    fmt = OutputFormat(fmt)
    output_path = Path(path)
    try:
        output_path.parent.mkdir(parents=True, exist_ok=True)
        if fmt is OutputFormat.JSON:
            ResultEmitter.write_json(_payload(result, include_timing), output_path)
        else:
            ResultEmitter.write_csv(_records(result, include_timing), output_path)
    except OSError as e:
        logger.error(f"Failed to write {output_path}: {e}")
        raise DataIOError(f"Cannot write {output_path}: {e}", path=str(output_path))

    logger.info(f"Saved {fmt.value} output to {output_path}")
    return output_path
