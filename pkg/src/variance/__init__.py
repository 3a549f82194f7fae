"""
Variance module.

Closed-form variances, their optimizers and Monte-Carlo checks.
"""

from .stats import PairStats, VarianceValue, log_diff_exp
from .bessel import log_bessel_i0
from .formulas import (
    gerf_log_leading,
    pairwise_log_variance,
    var_geom,
    var_gerf,
    var_pois,
    var_pos,
    var_trig,
    variance_for_spec,
)
from .optimizers import optimal_A_oprf, optimal_lambda, optimal_rho, optimize_A_complex, optimize_p
from .tuning import fit_mechanism
from .montecarlo import MonteCarloEstimate, bootstrap_interval, empirical_variance, feature_products

__all__ = [
    'PairStats',
    'VarianceValue',
    'log_diff_exp',
    'log_bessel_i0',
    'gerf_log_leading',
    'pairwise_log_variance',
    'var_geom',
    'var_gerf',
    'var_pois',
    'var_pos',
    'var_trig',
    'variance_for_spec',
    'optimal_A_oprf',
    'optimal_lambda',
    'optimal_rho',
    'optimize_A_complex',
    'optimize_p',
    'fit_mechanism',
    'MonteCarloEstimate',
    'bootstrap_interval',
    'empirical_variance',
    'feature_products',
]
