"""
Tests for service layer components.

Tests VarianceBenchmarkService, ClassificationService and
AttentionBenchmarkService.
"""

import math
import pytest
import numpy as np
from unittest.mock import patch

from src.core.exceptions import InvalidArgumentError
from src.core.rng import RngState
from src.mechanisms.params import MechanismKind, MechanismSpec
from src.processors.dataset_loader import LabeledDataset
from src.processors.regime_generator import Regime
from src.result_emitter import ResultEmitter
from src.services.attention_service import AttentionBenchmarkService, random_attention_inputs
from src.services.classification_service import (
    ClassificationService,
    classify,
    feature_budget,
    predict_labels,
)
from src.services.variance_service import (
    VarianceBenchmarkService,
    as_spec,
    fairness_log_offset,
    variance_benchmark,
)


def blobs(seed, per_class, d=2, spread=0.5):
    generator = np.random.default_rng(seed)
    centres = np.array([[3.0] * d, [-3.0] * d])
    labels = np.repeat([0, 1], per_class)
    objects = centres[labels] + spread * generator.standard_normal((2 * per_class, d))
    return LabeledDataset(objects, labels, 2)


class TestVarianceBenchmark:
    """Test the analytic variance benchmark."""

    def setup_method(self):
        """Set up test fixtures."""
        self.regime = Regime('normal', sigma=1.0, d=16, L=24)

    def test_deterministic(self):
        """The same seed gives byte-identical JSON."""
        first = variance_benchmark([self.regime], ['pos', 'oprf', 'geom'], repeats=2, rng=5)
        second = variance_benchmark([self.regime], ['pos', 'oprf', 'geom'], repeats=2, rng=5)

        assert ResultEmitter.to_json(first.to_dict()) == ResultEmitter.to_json(second.to_dict())

    def test_mechanism_order_irrelevant(self):
        """Entries do not depend on which mechanisms run alongside."""
        alone = variance_benchmark([self.regime], ['oprf'], repeats=2, rng=5)
        together = variance_benchmark([self.regime], ['pos', 'oprf'], repeats=2, rng=5)

        assert alone.entry('oprf').log_variance_mean == together.entry('oprf').log_variance_mean

    def test_oprf_beats_pos(self):
        """OPRF has a far smaller log-variance than PosRF on normal inputs."""
        result = variance_benchmark([self.regime], ['pos', 'oprf'], repeats=2, rng=0)

        gap = result.entry('oprf').log_variance_mean - result.entry('pos').log_variance_mean
        assert gap < -5.0

    def test_all_mechanisms_finite(self):
        """Every mechanism yields a finite mean on a small-scale regime."""
        regime = Regime('normal', sigma=0.3, d=4, L=10)

        result = variance_benchmark([regime], list(MechanismKind), repeats=1, rng=1)

        assert len(result.entries) == 8
        for entry in result.entries:
            assert math.isfinite(entry.log_variance_mean), entry.mechanism
            assert entry.pairs == 100
            assert len(entry.parameters) == 1

    def test_zero_variance_pairs_counted(self):
        """Pairs with zero variance are counted and left out of the mean."""
        table = np.array([[-np.inf, 1.0], [3.0, -np.inf]])
        with patch('src.services.variance_service.pairwise_log_variance', return_value=table):
            result = variance_benchmark([Regime('normal', d=2, L=2)], ['pos'], repeats=1, rng=0)

        entry = result.entry('pos')
        assert entry.zero_variance_pairs == 2
        assert entry.pairs == 4
        assert entry.log_variance_mean == pytest.approx(2.0 - math.log(2.0))

    def test_fairness_offset(self):
        """Real mechanisms are reported at two features, complex ones at one."""
        assert fairness_log_offset(MechanismKind.TRIG) == 0.0
        assert fairness_log_offset(MechanismKind.GERF) == 0.0
        assert fairness_log_offset(MechanismKind.OPRF) == pytest.approx(-math.log(2.0))

    def test_csv_regime_dimension(self, tmp_path):
        """The csv regime records the dimension of the file."""
        path = tmp_path / 'data.csv'
        path.write_text("0.1,0.2,0.3\n-0.2,0.0,0.1\n0.3,-0.1,0.2\n")
        regime = Regime('csv', sigma=1.0, L=4, path=str(path))

        result = variance_benchmark([regime], ['oprf'], repeats=1, rng=0)

        assert result.entry('oprf').regime['d'] == 3

    def test_records_and_timing(self):
        """Test flat records and the optional wall time."""
        result = variance_benchmark([self.regime], ['pos'], repeats=1, rng=0)

        record = result.records()[0]
        assert record['regime'] == 'normal'
        assert record['mechanism'] == 'pos'
        assert 'wall_time_s' not in result.to_dict()
        assert 'wall_time_s' in result.to_dict(include_timing=True)

    def test_as_spec(self):
        """Test names, kinds and specs are accepted."""
        spec = MechanismSpec(kind='oprf')

        assert as_spec(spec) is spec
        assert as_spec(MechanismKind.POS).kind is MechanismKind.POS
        assert as_spec('GeomRF+').kind is MechanismKind.GEOM_PLUS


class TestVarianceBenchmarkService:
    """Test the service wrapper."""

    def setup_method(self):
        """Set up test fixtures."""
        self.service = VarianceBenchmarkService()

    def test_run_success(self):
        """Test a successful run."""
        result = self.service.run([Regime('sphere', d=4, L=6)], ['trig', 'oprf'], repeats=1, seed=3)

        assert result.is_success()
        assert result.get_value().seed == 3
        assert len(result.get_value().entries) == 2

    def test_unknown_mechanism(self):
        """Test an unknown mechanism fails with exit code 2."""
        result = self.service.run([Regime('normal', d=4, L=6)], ['fourier'], repeats=1)

        assert result.is_failure()
        assert result.exit_code == 2
        assert 'fourier' in result.get_error()

    def test_missing_csv(self, tmp_path):
        """Test a missing csv file fails with exit code 2."""
        regime = Regime('csv', path=str(tmp_path / 'absent.csv'))

        result = self.service.run([regime], ['pos'], repeats=1)

        assert result.is_failure()
        assert result.exit_code == 2


class TestClassification:
    """Test the kernel-regression classifier."""

    def test_feature_budget(self):
        """Complex mechanisms get half the features."""
        assert feature_budget(MechanismSpec(kind='trig'), 128) == 64
        assert feature_budget(MechanismSpec(kind='gerf'), 1) == 1
        assert feature_budget(MechanismSpec(kind='oprf'), 128) == 128

    def test_single_training_point(self):
        """With one training object every test object gets its label."""
        train = LabeledDataset(np.array([[0.2, -0.1]]), np.array([1]), 2)
        test = LabeledDataset(np.array([[0.0, 0.0], [1.0, 1.0], [-0.5, 0.3]]), np.array([1, 1, 1]), 2)

        report = classify(train, test, 'oprf', M=8, rng=0, seeds=2)

        assert report.test_accuracy_mean == 1.0
        assert report.best_sigma == min(report.sigma_grid)
        assert all(score == 0.0 for score in report.validation_accuracy)

    def test_exact_kernel_on_blobs(self):
        """The exact kernel separates two distant blobs."""
        report = classify(blobs(0, 20), blobs(1, 10), None, sigmas=[1.0], rng=0)

        assert report.test_accuracy_mean == 1.0
        assert report.mechanism == {'kind': 'exact'}
        assert report.seeds == 1

    def test_oprf_close_to_exact(self):
        """OPRF features classify the blobs almost as well as the exact kernel."""
        report = classify(blobs(0, 20), blobs(1, 10), 'oprf', M=64, sigmas=[1.0], rng=0, seeds=5)

        assert report.test_accuracy_mean >= 0.9
        assert len(report.test_accuracies) == 5
        assert report.mechanism['kind'] == 'oprf'

    def test_deterministic(self):
        """Test the same seed reproduces the report."""
        first = classify(blobs(0, 20), blobs(1, 10), 'pos', M=16, sigmas=[0.1, 1.0], rng=4, seeds=3)
        second = classify(blobs(0, 20), blobs(1, 10), 'pos', M=16, sigmas=[0.1, 1.0], rng=4, seeds=3)

        assert first.to_dict() == second.to_dict()

    def test_predict_labels_exact(self):
        """Test exact prediction on the training objects themselves."""
        train = blobs(0, 5)

        predicted = predict_labels(train, train.objects, None, 16)

        np.testing.assert_array_equal(predicted, train.labels)

    def test_dimension_mismatch(self):
        """Test train and test must share the dimension."""
        with pytest.raises(InvalidArgumentError):
            classify(blobs(0, 5), blobs(1, 5, d=3), 'pos', sigmas=[1.0])

    def test_invalid_sigma_grid(self):
        """Test non-positive scales are rejected."""
        with pytest.raises(InvalidArgumentError):
            classify(blobs(0, 5), blobs(1, 5), 'pos', sigmas=[0.0, 1.0])

    def test_service_failure_exit_code(self):
        """Test the service maps argument errors to exit code 2."""
        result = ClassificationService().run(blobs(0, 5), blobs(1, 5, d=3), 'pos', sigmas=[1.0])

        assert result.is_failure()
        assert result.exit_code == 2

    def test_report_records(self):
        """Test the flat CSV record."""
        result = ClassificationService().run(blobs(0, 10), blobs(1, 4), 'pos', M=8, sigmas=[1.0], seeds=2)

        record = result.get_value().records()[0]
        assert record['mechanism'] == 'pos'
        assert record['best_sigma'] == 1.0


class TestAttentionBenchmarkService:
    """Test the attention benchmark service."""

    def test_random_inputs(self):
        """Test input shapes and determinism."""
        a = random_attention_inputs(RngState(0), 6, 3)
        b = random_attention_inputs(RngState(0), 6, 3)

        assert a.Q.shape == (6, 3)
        np.testing.assert_array_equal(a.V, b.V)

    def test_run(self):
        """Test a small benchmark run."""
        result = AttentionBenchmarkService().run(8, 4, ['oprf_ortho', 'posrf_ortho'], [4, 8], 3)

        assert result.is_success()
        report = result.get_value()
        assert len(report.rows) == 4
        assert report.row('posrf_ortho', 8).M == 8

    def test_unknown_mode(self):
        """Test an unknown mode fails with exit code 2."""
        result = AttentionBenchmarkService().run(8, 4, ['softmax'], [4], 2)

        assert result.is_failure()
        assert result.exit_code == 2

    def test_non_integer_seeds(self):
        """Test unparsable seeds fail as an argument error with exit code 2."""
        result = AttentionBenchmarkService().run(8, 4, ['oprf_ortho'], [4], ['zero', 'one'])

        assert result.is_failure()
        assert result.exit_code == 2
        assert 'InvalidArgumentError' in result.get_error()
