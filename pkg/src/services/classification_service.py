"""
Classification Service.

Nadaraya-Watson classification with the Gaussian kernel approximated by
random features. Only the argmax over classes matters, so the common
denominator is dropped and non-positive features are usable.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from ..config.settings import get_settings
from ..core.exceptions import RFKError, InvalidArgumentError, NumericOverflowError
from ..core.logging_config import get_logger
from ..core.results import Result
from ..core.rng import RngState, as_rng
from ..kernel_ops.exact import nadaraya_watson_scores
from ..kernel_ops.operator import rf_apply
from ..mechanisms.factory import draw_randomness
from ..mechanisms.params import MechanismSpec
from ..processors.dataset_loader import LabeledDataset, train_test_split
from ..validators.array_validator import ensure_count
from ..validators.dataset_validator import DatasetValidator
from ..variance.tuning import fit_mechanism
from .variance_service import MechanismLike, as_spec

logger = get_logger(__name__)

# stream keys
_SPLIT, _VALIDATE, _TEST = 0, 1, 2


@dataclass
class ClassificationReport:
    """Outcome of sigma tuning and test evaluation."""

    mechanism: Dict[str, Any]
    M: int
    features: int
    seeds: int
    sigma_grid: List[float]
    validation_accuracy: List[float]
    best_sigma: float
    test_accuracy_mean: float
    test_accuracy_std: float
    test_accuracies: List[float] = field(default_factory=list)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        return {
            'mechanism': self.mechanism,
            'M': self.M,
            'features': self.features,
            'seeds': self.seeds,
            'sigma_grid': self.sigma_grid,
            'validation_accuracy': self.validation_accuracy,
            'best_sigma': self.best_sigma,
            'test_accuracy_mean': self.test_accuracy_mean,
            'test_accuracy_std': self.test_accuracy_std,
        }

    def records(self, include_timing: bool = False) -> List[Dict[str, Any]]:
        return [{
            'mechanism': self.mechanism['kind'],
            'M': self.M,
            'features': self.features,
            'best_sigma': self.best_sigma,
            'test_accuracy_mean': self.test_accuracy_mean,
            'test_accuracy_std': self.test_accuracy_std,
        }]


def default_sigma_grid() -> np.ndarray:
    """Log-uniform grid from the settings (10 values in [1e-2, 1e2] by default)."""
    settings = get_settings()
    return np.logspace(
        np.log10(settings.sigma_grid_min),
        np.log10(settings.sigma_grid_max),
        settings.sigma_grid_size,
    )


def feature_budget(spec: MechanismSpec, M: int) -> int:
    """Features used for a budget of M reals: complex mechanisms get M // 2."""
    if spec.kind.is_complex:
        return max(M // 2, 1)
    return M


def predict_labels(
    train: LabeledDataset,
    query: np.ndarray,
    spec: Optional[MechanismSpec],
    M: int,
    rng: Optional[RngState] = None,
    orthogonal: bool = True
) -> np.ndarray:
    """
    argmax over classes of sum_i K(q, o_i) r_i for every query row.

    The inputs are used as given (already scaled). With spec None the exact
    kernel is used; otherwise spec must be fitted on train.
    """
    targets = train.one_hot()
    if spec is None:
        scores = nadaraya_watson_scores(train.objects, targets, query)
    else:
        use_orthogonal = orthogonal and spec.kind.is_gerf_family
        randomness = draw_randomness(spec, rng, M, train.dim, use_orthogonal)
        scores = rf_apply(query, train.objects, targets, spec, randomness)
    return np.argmax(scores, axis=1)


def _scaled(dataset: LabeledDataset, sigma: float) -> LabeledDataset:
    return LabeledDataset(sigma * dataset.objects, dataset.labels, dataset.n_classes)


def _fit(spec: Optional[MechanismSpec], train: LabeledDataset) -> Optional[MechanismSpec]:
    return None if spec is None else fit_mechanism(spec, train.objects)


def _accuracies(
    spec: Optional[MechanismSpec],
    train: LabeledDataset,
    evaluate: LabeledDataset,
    M: int,
    seeds: int,
    rng: RngState,
    stream: tuple
) -> List[float]:
    if spec is None:
        predicted = predict_labels(train, evaluate.objects, None, M)
        return [float(np.mean(predicted == evaluate.labels))]
    accuracies = []
    for seed in range(seeds):
        predicted = predict_labels(train, evaluate.objects, spec, M, rng.derive(*stream, seed))
        accuracies.append(float(np.mean(predicted == evaluate.labels)))
    return accuracies


def classify(
    train: LabeledDataset,
    test: LabeledDataset,
    spec: Optional[MechanismLike],
    M: int = 128,
    sigmas: Optional[Sequence[float]] = None,
    rng: Union[RngState, int, None] = None,
    seeds: Optional[int] = None,
    validation_fraction: Optional[float] = None
) -> ClassificationReport:
    """
    Tune sigma on a validation fold and report test accuracy over RF seeds.

    A fraction of the training set is held out for validation. For every
    sigma the mechanism is fitted on the sigma-scaled remaining training
    objects and the validation accuracy is averaged over the seeds; the
    best mean wins, ties going to the smaller sigma. Test accuracy at that
    sigma is reported as mean and std over the seeds.

    Args:
        train: Training set
        test: Test set (same dimension and class count)
        spec: Mechanism, or None for the exact kernel
        M: Real-number feature budget
        sigmas: Scale grid (settings grid by default)
        rng: Random stream or seed
        seeds: RF seeds per evaluation (settings default 50)
        validation_fraction: Held-out share of train (settings default 0.05)

    Returns:
        ClassificationReport

    Raises:
        InvalidArgumentError: On dimension or class count mismatch
    """
    settings = get_settings()
    validator = DatasetValidator()
    if not validator.validate(train) or not validator.validate(test):
        raise InvalidArgumentError("train and test must be valid labeled datasets")
    if train.dim != test.dim:
        raise InvalidArgumentError(f"train has d={train.dim}, test has d={test.dim}")
    if train.n_classes != test.n_classes:
        raise InvalidArgumentError(
            f"train has {train.n_classes} classes, test has {test.n_classes}"
        )

    rng = as_rng(rng, settings.default_seed)
    M = ensure_count(M, 'M')
    spec = None if spec is None else as_spec(spec)
    seeds = ensure_count(seeds or settings.classify_seeds, 'seeds')
    fraction = settings.validation_fraction if validation_fraction is None else validation_fraction
    grid = [float(s) for s in (default_sigma_grid() if sigmas is None else sorted(sigmas))]
    if not grid or min(grid) <= 0:
        raise InvalidArgumentError("sigma grid must hold positive values")
    features = M if spec is None else feature_budget(spec, M)

    fit_part, validation = train_test_split(train, fraction, rng.derive(_SPLIT))
    scores = []
    for index, sigma in enumerate(grid):
        if validation is None:
            scores.append(0.0)
            continue
        scaled_train = _scaled(fit_part, sigma)
        try:
            fitted = _fit(spec, scaled_train)
            accuracy = _accuracies(fitted, scaled_train, _scaled(validation, sigma),
                                   features, seeds, rng, (_VALIDATE, index))
            scores.append(float(np.mean(accuracy)))
        except NumericOverflowError as e:
            logger.warning(f"sigma={sigma:g} overflowed during validation: {e}")
            scores.append(0.0)
        logger.debug(f"sigma={sigma:g}: validation accuracy {scores[-1]:.4f}")

    if validation is None:
        logger.warning("Training set too small for a validation fold, using the smallest sigma")
    best_sigma = grid[int(np.argmax(scores))]
    logger.info(f"Selected sigma={best_sigma:g}")

    scaled_train = _scaled(fit_part, best_sigma)
    fitted = _fit(spec, scaled_train)
    accuracies = _accuracies(fitted, scaled_train, _scaled(test, best_sigma),
                             features, seeds, rng, (_TEST,))

    mechanism = {'kind': 'exact'} if fitted is None else fitted.to_dict()
    return ClassificationReport(
        mechanism=mechanism,
        M=M,
        features=features,
        seeds=len(accuracies),
        sigma_grid=grid,
        validation_accuracy=scores,
        best_sigma=best_sigma,
        test_accuracy_mean=float(np.mean(accuracies)),
        test_accuracy_std=float(np.std(accuracies)),
        test_accuracies=accuracies,
    )


class ClassificationService:
    """
    Service running the kernel-regression classifier.
    """

    def run(
        self,
        train: LabeledDataset,
        test: LabeledDataset,
        mechanism: Optional[MechanismLike],
        M: int = 128,
        seed: int = 0,
        sigmas: Optional[Sequence[float]] = None,
        seeds: Optional[int] = None
    ) -> Result[ClassificationReport]:
        """
        Classify test objects.

        Returns:
            Result holding a ClassificationReport
        """
        try:
            report = classify(train, test, mechanism, M=M, sigmas=sigmas, rng=seed, seeds=seeds)
            logger.info(
                f"Test accuracy {report.test_accuracy_mean:.4f} +/- {report.test_accuracy_std:.4f}"
            )
            return Result.success_result(report)
        except RFKError as e:
            logger.error(f"Classification failed: {e}")
            return Result.from_exception(e)
