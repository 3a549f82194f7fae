"""
Variance Benchmark Service.

Compares the analytic log-variance of random-feature mechanisms on
synthetic or CSV-backed input regimes.
"""

import math
import time
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from ..core.exceptions import RFKError, InvalidArgumentError
from ..core.logging_config import get_logger
from ..core.results import Result
from ..core.rng import RngState, as_rng
from ..mechanisms.params import MechanismKind, MechanismSpec
from ..processors.regime_generator import Regime, RegimeKind, generate_regime
from ..variance.formulas import pairwise_log_variance
from ..variance.tuning import fit_mechanism

logger = get_logger(__name__)

# a complex feature holds two real numbers
_LOG_TWO = math.log(2.0)

MechanismLike = Union[MechanismSpec, MechanismKind, str]


def as_spec(mechanism: MechanismLike) -> MechanismSpec:
    """Accept a MechanismSpec, a MechanismKind or a mechanism name."""
    if isinstance(mechanism, MechanismSpec):
        return mechanism
    if isinstance(mechanism, MechanismKind):
        return MechanismSpec(kind=mechanism)
    return MechanismSpec(kind=MechanismKind.parse(str(mechanism)))


def fairness_log_offset(kind: MechanismKind) -> float:
    """
    Log-factor applied to single-feature variances for an equal real budget.

    Real mechanisms are reported at M = 2 features (variance halved),
    complex ones at M = 1.
    """
    return 0.0 if kind.is_complex else -_LOG_TWO


@dataclass
class BenchEntry:
    """Log-variance summary of one mechanism on one regime."""

    regime: Dict[str, Any]
    mechanism: str
    log_variance_mean: float
    log_variance_std: float
    zero_variance_pairs: int
    pairs: int
    parameters: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'regime': self.regime,
            'mechanism': self.mechanism,
            'log_variance_mean': self.log_variance_mean,
            'log_variance_std': self.log_variance_std,
            'zero_variance_pairs': self.zero_variance_pairs,
            'pairs': self.pairs,
            'parameters': self.parameters,
        }

    def record(self) -> Dict[str, Any]:
        """Flat row for CSV output."""
        row = {
            'regime': self.regime['kind'],
            'sigma': self.regime['sigma'],
            'd': self.regime['d'],
            'L': self.regime['L'],
            'mechanism': self.mechanism,
            'log_variance_mean': self.log_variance_mean,
            'log_variance_std': self.log_variance_std,
            'zero_variance_pairs': self.zero_variance_pairs,
            'pairs': self.pairs,
        }
        return row


@dataclass
class BenchResult:
    """All entries of a variance benchmark run."""

    seed: int
    repeats: int
    entries: List[BenchEntry] = field(default_factory=list)
    wall_time_s: float = 0.0

    def entry(self, mechanism: MechanismLike, regime_index: int = 0) -> BenchEntry:
        name = as_spec(mechanism).kind.value
        regimes = []
        for e in self.entries:
            if e.regime not in regimes:
                regimes.append(e.regime)
        target = regimes[regime_index]
        for e in self.entries:
            if e.mechanism == name and e.regime == target:
                return e
        raise KeyError(name)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            'seed': self.seed,
            'repeats': self.repeats,
            'results': [e.to_dict() for e in self.entries],
        }
        if include_timing:
            data['wall_time_s'] = self.wall_time_s
        return data

    def records(self, include_timing: bool = False) -> List[Dict[str, Any]]:
        return [e.record() for e in self.entries]


def _summarize(log_variances: List[np.ndarray]):
    values = np.concatenate([lv.reshape(-1) for lv in log_variances])
    finite = values[np.isfinite(values)]
    zeros = int(np.sum(np.isneginf(values)))
    if finite.size == 0:
        return float('-inf'), 0.0, zeros, int(values.size)
    return float(finite.mean()), float(finite.std()), zeros, int(values.size)


def variance_benchmark(
    regimes: Sequence[Regime],
    mechanisms: Sequence[MechanismLike],
    d: Optional[int] = None,
    L: Optional[int] = None,
    repeats: int = 5,
    rng: Union[RngState, int, None] = None
) -> BenchResult:
    """
    Mean and std of the analytic log-variance over all L^2 pairs and repeats.

    For every repeat the two sets are redrawn, each mechanism is fitted on
    the averaged statistics of the sets and its variance is evaluated on
    every pair. Pairs with zero variance are counted, not averaged.

    Args:
        regimes: Input regimes
        mechanisms: Mechanisms to compare
        d: Override the regimes' dimension
        L: Override the regimes' set size
        repeats: Number of independent set draws
        rng: Random stream or seed

    Returns:
        BenchResult
    """
    if not regimes or not mechanisms:
        raise InvalidArgumentError("regimes and mechanisms must not be empty")
    if repeats < 1:
        raise InvalidArgumentError(f"repeats must be positive, got {repeats!r}")
    rng = as_rng(rng)
    specs = [as_spec(m) for m in mechanisms]
    result = BenchResult(seed=rng.seed, repeats=repeats)
    started = time.perf_counter()

    for r_index, regime in enumerate(regimes):
        overrides = {k: v for k, v in (('d', d), ('L', L)) if v is not None}
        regime = replace(regime, **overrides) if overrides else regime
        draws = [generate_regime(rng.derive(r_index, rep), regime) for rep in range(repeats)]
        if regime.kind is RegimeKind.CSV:
            regime = replace(regime, d=draws[0][0].shape[1])
        logger.info(f"Regime {regime.name}: {repeats} draws of {regime.L} x {draws[0][0].shape[1]}")

        for spec in specs:
            log_variances, parameters = [], []
            for X, Y in draws:
                fitted = fit_mechanism(spec, X, Y)
                parameters.append(fitted.to_dict())
                log_var = pairwise_log_variance(fitted, X, Y) + fairness_log_offset(spec.kind)
                log_variances.append(log_var)
            mean, std, zeros, pairs = _summarize(log_variances)
            result.entries.append(BenchEntry(
                regime=regime.to_dict(),
                mechanism=spec.kind.value,
                log_variance_mean=mean,
                log_variance_std=std,
                zero_variance_pairs=zeros,
                pairs=pairs,
                parameters=parameters,
            ))
            logger.info(f"  {spec.kind.value}: log-variance {mean:.4g} +/- {std:.3g}")

    result.wall_time_s = time.perf_counter() - started
    return result


class VarianceBenchmarkService:
    """
    Service running variance benchmarks.

    Wraps variance_benchmark and converts library errors into Results.
    """

    def run(
        self,
        regimes: Sequence[Regime],
        mechanisms: Sequence[MechanismLike],
        repeats: int = 5,
        seed: int = 0
    ) -> Result[BenchResult]:
        """
        Run the benchmark.

        Returns:
            Result holding a BenchResult, or the failure and its exit code
        """
        try:
            return Result.success_result(variance_benchmark(regimes, mechanisms, repeats=repeats, rng=seed))
        except RFKError as e:
            logger.error(f"Variance benchmark failed: {e}")
            return Result.from_exception(e)
