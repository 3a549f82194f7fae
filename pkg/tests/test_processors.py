"""
Tests for CSV loading, mechanism files and synthetic regimes.
"""

import json

import pytest
import numpy as np

from src.core.exceptions import DataIOError, InvalidArgumentError
from src.core.rng import RngState
from src.processors.dataset_loader import (
    LabeledDataset,
    load_feature_csv,
    load_labeled_csv,
    load_mechanism_json,
    train_test_split,
)
from src.mechanisms.params import MechanismKind, MechanismSpec, make_gerf_params
from src.processors.regime_generator import Regime, RegimeKind, generate_regime


class TestDatasetLoader:
    """Test CSV ingestion."""

    def test_load_labeled_with_header(self, tmp_path):
        """Test header detection and label column."""
        path = tmp_path / 'train.csv'
        path.write_text("x0,x1,label\n0.5,1.0,0\n-1.5,2.0,2\n3.0,-0.5,1\n")

        dataset = load_labeled_csv(str(path))

        assert dataset.size == 3
        assert dataset.dim == 2
        assert dataset.n_classes == 3
        np.testing.assert_array_equal(dataset.labels, [0, 2, 1])
        np.testing.assert_allclose(dataset.objects[1], [-1.5, 2.0])

    def test_load_labeled_fixed_class_count(self, tmp_path):
        """Test n_classes may exceed the labels present."""
        path = tmp_path / 'test.csv'
        path.write_text("0.5,0\n1.0,0\n")

        dataset = load_labeled_csv(str(path), n_classes=4)

        assert dataset.n_classes == 4
        assert dataset.one_hot().shape == (2, 4)

    def test_label_out_of_range(self, tmp_path):
        """Test labels beyond n_classes raise."""
        path = tmp_path / 'test.csv'
        path.write_text("0.5,3\n")

        with pytest.raises(InvalidArgumentError):
            load_labeled_csv(str(path), n_classes=2)

    def test_fractional_labels(self, tmp_path):
        """Test non-integer labels raise."""
        path = tmp_path / 'bad.csv'
        path.write_text("0.5,0.5\n")

        with pytest.raises(DataIOError):
            load_labeled_csv(str(path))

    def test_missing_file(self, tmp_path):
        """Test a missing file raises DataIOError."""
        with pytest.raises(DataIOError) as exc_info:
            load_feature_csv(str(tmp_path / 'absent.csv'))

        assert exc_info.value.path.endswith('absent.csv')

    def test_ragged_rows(self, tmp_path):
        """Test rows of different width raise."""
        path = tmp_path / 'ragged.csv'
        path.write_text("1,2,3\n4,5\n")

        with pytest.raises(DataIOError):
            load_feature_csv(str(path))

    def test_non_numeric_cell(self, tmp_path):
        """Test a text cell after the header raises."""
        path = tmp_path / 'text.csv'
        path.write_text("a,b\n1,2\n3,oops\n")

        with pytest.raises(DataIOError):
            load_feature_csv(str(path))

    def test_feature_csv(self, tmp_path):
        """Test every column is a feature."""
        path = tmp_path / 'features.csv'
        path.write_text("1,2,3\n4,5,6\n\n")

        matrix = load_feature_csv(str(path))

        assert matrix.shape == (2, 3)


class TestLabeledDataset:
    """Test the labeled dataset container."""

    def test_label_count_mismatch(self):
        """Test one label per object."""
        with pytest.raises(InvalidArgumentError):
            LabeledDataset(np.ones((3, 2)), np.array([0, 1]), 2)

    def test_train_test_split(self):
        """Test the held-out share and disjointness."""
        objects = np.arange(40.0).reshape(20, 2)
        dataset = LabeledDataset(objects, np.arange(20) % 2, 2)

        kept, held = train_test_split(dataset, 0.25, RngState(0))

        assert kept.size == 15
        assert held.size == 5
        assert not set(kept.objects[:, 0]) & set(held.objects[:, 0])

    def test_split_too_small(self):
        """Test a single object leaves no validation fold."""
        dataset = LabeledDataset(np.ones((1, 2)), np.array([0]), 1)

        kept, held = train_test_split(dataset, 0.05, RngState(0))

        assert kept.size == 1
        assert held is None


class TestMechanismJson:
    """Test reading mechanism objects."""

    def test_round_trip_of_result_object(self, tmp_path):
        """Test the object written in results is read back as the same mechanism."""
        original = MechanismSpec(kind='gerf', gerf=make_gerf_params(0.05 + 0.1j, -1, 3))
        path = tmp_path / 'mechanism.json'
        path.write_text(json.dumps(original.to_dict()))

        spec = load_mechanism_json(str(path), dim=3)

        assert spec.kind is MechanismKind.GERF
        assert spec.gerf.A == 0.05 + 0.1j
        assert spec.gerf.s == -1

    def test_discrete_law(self, tmp_path):
        """Test a geometric law is rebuilt without a dimension."""
        path = tmp_path / 'mechanism.json'
        path.write_text('{"kind": "geom", "p": 0.25}')

        assert load_mechanism_json(str(path)).discrete.p == 0.25

    def test_not_an_object(self, tmp_path):
        """Test non-object JSON and broken files raise DataIOError."""
        listed, broken = tmp_path / 'list.json', tmp_path / 'broken.json'
        listed.write_text('[1, 2]')
        broken.write_text('{"kind": ')

        for path in (listed, broken, tmp_path / 'absent.json'):
            with pytest.raises(DataIOError):
                load_mechanism_json(str(path))

    def test_bad_kernel_mode(self, tmp_path):
        """Test an unknown kernel mode is an argument error."""
        path = tmp_path / 'mechanism.json'
        path.write_text('{"kind": "pos", "kernel_mode": "laplace"}')

        with pytest.raises(InvalidArgumentError):
            load_mechanism_json(str(path))


class TestRegimeGenerator:
    """Test synthetic input regimes."""

    def test_normal(self):
        """Test shapes and scale."""
        X, Y = generate_regime(RngState(0), Regime(RegimeKind.NORMAL, sigma=2.0, d=4, L=2000))

        assert X.shape == (2000, 4)
        assert Y.shape == (2000, 4)
        assert abs(X.std() - 2.0) < 0.1

    def test_sphere(self):
        """Test rows lie on the sphere of radius sigma."""
        X, Y = generate_regime(RngState(0), Regime('sphere', sigma=0.5, d=3, L=50))

        np.testing.assert_allclose(np.linalg.norm(X, axis=1), 0.5)
        np.testing.assert_allclose(np.linalg.norm(Y, axis=1), 0.5)

    def test_heterogen(self):
        """Test the second set is centred at sigma * 1."""
        X, Y = generate_regime(RngState(0), Regime('heterogen', sigma=1.0, d=2, L=4000))

        assert np.all(np.abs(X.mean(axis=0)) < 0.1)
        assert np.all(np.abs(Y.mean(axis=0) - 1.0) < 0.1)

    def test_csv_regime(self, tmp_path):
        """Test rows are drawn from the file and scaled."""
        path = tmp_path / 'data.csv'
        path.write_text("1.0,2.0,3.0\n-1.0,0.0,1.0\n")

        X, Y = generate_regime(RngState(0), Regime('csv', sigma=0.5, L=10, path=str(path)))

        assert X.shape == (10, 3)
        allowed = {(0.5, 1.0, 1.5), (-0.5, 0.0, 0.5)}
        assert all(tuple(row) in allowed for row in X)
        assert all(tuple(row) in allowed for row in Y)

    def test_deterministic(self):
        """Test the same seed reproduces the sets."""
        regime = Regime('normal', d=3, L=5)

        a = generate_regime(RngState(9), regime)
        b = generate_regime(RngState(9), regime)

        np.testing.assert_array_equal(a[0], b[0])
        np.testing.assert_array_equal(a[1], b[1])

    def test_invalid_regimes(self):
        """Test bad parameters raise."""
        with pytest.raises(InvalidArgumentError):
            Regime('normal', sigma=0.0)
        with pytest.raises(InvalidArgumentError):
            Regime('csv')
        with pytest.raises(ValueError):
            Regime('uniform')
