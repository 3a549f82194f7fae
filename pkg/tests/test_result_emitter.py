"""
Tests for result serialization.
"""

import csv
import json
import pytest
import numpy as np

from src.core.exceptions import DataIOError, InvalidArgumentError
from src.mechanisms.params import MechanismKind
from src.result_emitter import OutputFormat, ResultEmitter, emit_results


class FakeResult:
    """Minimal object with the result protocol."""

    def to_dict(self, include_timing=False):
        data = {'value': 1.5}
        if include_timing:
            data['wall_time_s'] = 0.25
        return data

    def records(self, include_timing=False):
        return [{'value': 1.5}]


class TestToJson:
    """Test JSON text generation."""

    def test_float_precision(self):
        """Floats carry 17 significant digits."""
        text = ResultEmitter.to_json({'x': 0.1})

        assert '0.10000000000000001' in text
        assert json.loads(text)['x'] == 0.1

    def test_non_finite_as_null(self):
        """Infinities and NaN become null."""
        data = json.loads(ResultEmitter.to_json({'a': float('inf'), 'b': float('-inf'), 'c': np.nan}))

        assert data == {'a': None, 'b': None, 'c': None}

    def test_numpy_and_enum_values(self):
        """Test numpy scalars, arrays and enums are converted."""
        data = json.loads(ResultEmitter.to_json({
            'n': np.int64(3),
            'v': np.array([1.0, 2.0]),
            'kind': MechanismKind.OPRF,
            'flag': True,
        }))

        assert data == {'n': 3, 'v': [1.0, 2.0], 'kind': 'oprf', 'flag': True}

    def test_key_order_and_newline(self):
        """Insertion order is kept and the text ends with a newline."""
        text = ResultEmitter.to_json({'b': 1, 'a': {'z': [], 'y': {}}})

        assert text.endswith('\n')
        assert text.index('"b"') < text.index('"a"')
        assert json.loads(text) == {'b': 1, 'a': {'z': [], 'y': {}}}

    def test_string_escaping(self):
        """Test quotes and newlines are escaped."""
        text = ResultEmitter.to_json({'s': 'a "b"\nc'})

        assert json.loads(text)['s'] == 'a "b"\nc'

    def test_complex_rejected(self):
        """Test complex numbers must be split first."""
        with pytest.raises(InvalidArgumentError):
            ResultEmitter.to_json({'A': 1 + 2j})


class TestEmitResults:
    """Test writing results to disk."""

    def test_json_file(self, tmp_path):
        """Test JSON output and parent directory creation."""
        path = tmp_path / 'nested' / 'dir' / 'out.json'

        written = emit_results(FakeResult(), 'json', path)

        assert written == path
        assert json.loads(path.read_text()) == {'value': 1.5}

    def test_timing_toggle(self, tmp_path):
        """Test wall time is written only on request."""
        path = tmp_path / 'out.json'

        emit_results(FakeResult(), OutputFormat.JSON, path, include_timing=True)

        assert 'wall_time_s' in json.loads(path.read_text())

    def test_csv_union_header(self, tmp_path):
        """Test the header holds every key in first-seen order."""
        path = tmp_path / 'out.csv'
        records = [{'a': 1, 'b': 0.5}, {'a': 2, 'c': [1, 2]}]

        emit_results(records, 'csv', path)

        with open(path, newline='') as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ['a', 'b', 'c']
        assert rows[1] == ['1', '0.5', '']
        assert rows[2][0] == '2'
        assert json.loads(rows[2][2]) == [1, 2]

    def test_csv_single_dict(self, tmp_path):
        """Test a dict becomes one CSV row."""
        path = tmp_path / 'out.csv'

        emit_results({'x': 1}, 'csv', path)

        assert path.read_text() == 'x\n1\n'

    def test_csv_needs_records(self, tmp_path):
        """Test unsupported CSV payloads raise."""
        with pytest.raises(InvalidArgumentError):
            emit_results(42, 'csv', tmp_path / 'out.csv')

    def test_unwritable_path(self, tmp_path):
        """Test writing onto a directory raises DataIOError."""
        target = tmp_path / 'taken'
        target.mkdir()

        with pytest.raises(DataIOError):
            emit_results({'x': 1}, 'json', target)

    def test_identical_bytes(self, tmp_path):
        """Equal results produce identical files."""
        data = {'mean': 1.0 / 3.0, 'values': [0.1, 0.2]}

        emit_results(data, 'json', tmp_path / 'a.json')
        emit_results(data, 'json', tmp_path / 'b.json')

        assert (tmp_path / 'a.json').read_bytes() == (tmp_path / 'b.json').read_bytes()
