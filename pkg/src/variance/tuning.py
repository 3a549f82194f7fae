"""
Resolution of data-dependent mechanism parameters.
"""

from typing import Optional

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..core.logging_config import get_logger
from ..dataset_stats.aggregates import compute_stats, pair_stats_from_dataset
from ..mechanisms.params import DiscreteFamily, DiscreteParams, MechanismKind, MechanismSpec, make_gerf_params
from ..mechanisms.shift import apply_shift, fit_shift
from ..validators.array_validator import ensure_pair
from .optimizers import optimal_A_oprf, optimal_lambda, optimize_A_complex, optimize_p

logger = get_logger(__name__)

LAMBDA_FLOOR = 1e-8


def fit_mechanism(spec: MechanismSpec, X: np.ndarray, Y: Optional[np.ndarray] = None) -> MechanismSpec:
    """
    Fill in every unset data-dependent parameter of a mechanism.

    Plus kinds first fit the shift on X and Y together; the statistics are
    then averaged over the (shifted) sets and fed to the optimizer of the
    kind. Parameters already present on the spec are kept.

    Args:
        spec: Mechanism, possibly unresolved
        X: L_x x d first set
        Y: L_y x d second set (defaults to X)

    Returns:
        Resolved MechanismSpec
    """
    if Y is None:
        Y = X
    X, Y = ensure_pair(X, Y)
    kind = spec.kind
    d = X.shape[1]

    if kind in (MechanismKind.TRIG, MechanismKind.POS):
        return spec
    if kind.is_gerf_family and spec.gerf is not None:
        return spec

    if kind.is_plus:
        if spec.shift is None:
            spec = spec.with_updates(shift=fit_shift(X, Y, spec.epsilon))
        X, Y = apply_shift(X, spec.shift), apply_shift(Y, spec.shift)
        if spec.discrete is not None:
            return spec
    elif kind.is_discrete and spec.discrete is not None:
        return spec

    stats = pair_stats_from_dataset(compute_stats(X, Y))

    if kind is MechanismKind.OPRF:
        A = optimal_A_oprf(stats.sq_norm_sum_plus, d)
        spec = spec.with_updates(gerf=make_gerf_params(A, 1, d))
    elif kind is MechanismKind.GERF:
        A, s = optimize_A_complex(stats)
        spec = spec.with_updates(gerf=make_gerf_params(A, s, d))
    elif kind.discrete_family is DiscreteFamily.POISSON:
        try:
            lam = optimal_lambda(stats)
        except InvalidArgumentError:
            logger.warning(f"Zero product statistic, using lambda floor {LAMBDA_FLOOR}")
            lam = LAMBDA_FLOOR
        spec = spec.with_updates(discrete=DiscreteParams.poisson(max(lam, LAMBDA_FLOOR)))
    else:
        spec = spec.with_updates(discrete=DiscreteParams.geometric(optimize_p(stats)))

    logger.debug(f"Fitted {kind.value}: {spec.to_dict()}")
    return spec
