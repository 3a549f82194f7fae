"""
End-to-end tests for the command-line interface.
"""

import csv
import json
import pytest
from unittest.mock import patch

from main import build_parser, main
from src.config.settings import Settings


def write_blobs(path, shift):
    rows = []
    for index in range(12):
        label = index % 2
        centre = 2.0 if label else -2.0
        offset = 0.1 * ((index * 7) % 5 - 2) + shift
        rows.append(f"{centre + offset},{centre - offset},{label}")
    path.write_text("x0,x1,label\n" + "\n".join(rows) + "\n")


class TestVarianceCommand:
    """Test the variance subcommand."""

    def setup_method(self):
        """Set up test fixtures."""
        self.base = ['variance', '--d', '4', '--l', '6', '--repeats', '1',
                     '--mechanisms', 'pos,oprf,geom', '--seed', '11']

    def test_writes_json(self, tmp_path):
        """Test a run writes one entry per mechanism."""
        out = tmp_path / 'variance.json'

        code = main(self.base + ['--out', str(out)])

        assert code == 0
        data = json.loads(out.read_text())
        assert data['seed'] == 11
        assert [entry['mechanism'] for entry in data['results']] == ['pos', 'oprf', 'geom']

    def test_byte_identical(self, tmp_path):
        """The same arguments give byte-identical output."""
        first, second = tmp_path / 'a.json', tmp_path / 'b.json'

        main(self.base + ['--out', str(first)])
        main(self.base + ['--out', str(second)])

        assert first.read_bytes() == second.read_bytes()

    def test_csv_format(self, tmp_path):
        """Test CSV rows per mechanism."""
        out = tmp_path / 'variance.csv'

        assert main(self.base + ['--format', 'csv', '--out', str(out)]) == 0

        with open(out, newline='') as handle:
            rows = list(csv.DictReader(handle))
        assert [row['mechanism'] for row in rows] == ['pos', 'oprf', 'geom']

    def test_unknown_mechanism(self, tmp_path):
        """Test an unknown mechanism exits with code 2 and writes nothing."""
        out = tmp_path / 'variance.json'

        code = main(['variance', '--d', '4', '--l', '6', '--mechanisms', 'fourier', '--out', str(out)])

        assert code == 2
        assert not out.exists()

    def test_csv_regime_without_path(self, tmp_path):
        """Test the csv regime requires a path."""
        code = main(['variance', '--regime', 'csv', '--out', str(tmp_path / 'v.json')])

        assert code == 2


class TestClassifyCommand:
    """Test the classify subcommand."""

    def test_exact_and_oprf(self, tmp_path):
        """Test both exact and random-feature classification."""
        train, test = tmp_path / 'train.csv', tmp_path / 'test.csv'
        write_blobs(train, 0.0)
        write_blobs(test, 0.05)

        for mechanism in ('exact', 'oprf'):
            out = tmp_path / f'{mechanism}.json'
            code = main(['classify', '--train', str(train), '--test', str(test),
                         '--mechanism', mechanism, '--m', '32', '--sigmas', '1.0',
                         '--seeds', '3', '--out', str(out)])

            assert code == 0
            data = json.loads(out.read_text())
            assert data['best_sigma'] == 1.0
            assert data['mechanism']['kind'] == mechanism

    def test_mechanism_json(self, tmp_path):
        """Test a JSON mechanism object fixes the parameters used."""
        train, test = tmp_path / 'train.csv', tmp_path / 'test.csv'
        write_blobs(train, 0.0)
        write_blobs(test, 0.05)
        spec_path = tmp_path / 'mechanism.json'
        spec_path.write_text(json.dumps({'kind': 'oprf', 'A_re': -0.05, 'A_im': 0.0, 's': 1}))
        out = tmp_path / 'out.json'

        code = main(['classify', '--train', str(train), '--test', str(test),
                     '--mechanism-json', str(spec_path), '--m', '32', '--sigmas', '1.0',
                     '--seeds', '2', '--out', str(out)])

        assert code == 0
        mechanism = json.loads(out.read_text())['mechanism']
        assert mechanism['kind'] == 'oprf'
        assert mechanism['A_re'] == -0.05

    def test_mechanism_json_unknown_kind(self, tmp_path):
        """Test an unknown kind in the JSON object exits with code 2."""
        train, test = tmp_path / 'train.csv', tmp_path / 'test.csv'
        write_blobs(train, 0.0)
        write_blobs(test, 0.0)
        spec_path = tmp_path / 'mechanism.json'
        spec_path.write_text('{"kind": "fourier"}')

        code = main(['classify', '--train', str(train), '--test', str(test),
                     '--mechanism-json', str(spec_path), '--out', str(tmp_path / 'out.json')])

        assert code == 2

    def test_missing_train_file(self, tmp_path):
        """Test a missing input exits with code 2."""
        test = tmp_path / 'test.csv'
        write_blobs(test, 0.0)

        code = main(['classify', '--train', str(tmp_path / 'absent.csv'), '--test', str(test),
                     '--out', str(tmp_path / 'out.json')])

        assert code == 2


class TestAttentionCommand:
    """Test the attention-bench subcommand."""

    def test_small_run(self, tmp_path):
        """Test one row per mode and feature count."""
        out = tmp_path / 'attention.json'

        code = main(['attention-bench', '--l', '8', '--d', '4', '--ms', '4,8',
                     '--seeds', '2', '--modes', 'oprf_iid,posrf_iid', '--out', str(out)])

        assert code == 0
        data = json.loads(out.read_text())
        assert data['L'] == 8
        assert len(data['results']) == 4

    def test_unknown_mode(self, tmp_path):
        """Test an unknown mode exits with code 2."""
        code = main(['attention-bench', '--l', '8', '--d', '4', '--ms', '4',
                     '--modes', 'relu', '--out', str(tmp_path / 'a.json')])

        assert code == 2


class TestGenDataCommand:
    """Test the gen-data subcommand."""

    def test_writes_tagged_rows(self, tmp_path):
        """Test both sets are written with coordinate columns."""
        out = tmp_path / 'data.csv'

        code = main(['gen-data', '--regime', 'sphere', '--d', '3', '--l', '5', '--out', str(out)])

        assert code == 0
        with open(out, newline='') as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ['set', 'c0', 'c1', 'c2']
        assert len(rows) == 11
        assert [row[0] for row in rows[1:]] == ['x'] * 5 + ['y'] * 5


class TestParser:
    """Test argument parsing."""

    def test_command_required(self):
        """Test a subcommand must be given."""
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_bad_integer_list(self):
        """Test list arguments are validated."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(['attention-bench', '--ms', '4,x'])

    def test_defaults(self):
        """Test subcommand defaults."""
        args = build_parser().parse_args(['attention-bench'])

        assert args.ms == [16, 64, 256, 1024]
        assert args.seeds == 20
        assert args.format == 'json'


class TestConfiguration:
    """Test settings are checked before any command runs."""

    def test_invalid_settings_exit_2(self, tmp_path):
        """Test out-of-range settings stop the run with code 2."""
        bad = Settings()
        bad.geom_p_margin = 0.7
        out = tmp_path / 'data.csv'

        with patch('main.settings', bad):
            code = main(['gen-data', '--d', '2', '--l', '3', '--out', str(out)])

        assert code == 2
        assert not out.exists()
