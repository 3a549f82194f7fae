"""
Variance-minimizing parameter choices.

OPRF has a closed-form optimum; complex GERF is searched with L-BFGS-B
per sign s; the Poisson rate has a closed form and the geometric p is
found by bounded Brent minimization.
"""

import math
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from ..config.settings import get_settings
from ..core.exceptions import InvalidArgumentError, InvalidParameterError
from ..core.logging_config import get_logger
from .formulas import gerf_log_leading, var_geom
from .stats import PairStats

logger = get_logger(__name__)

# keep Re(1 - 8A) away from zero during the complex search
_RE_A_CEILING = 0.125 - 1e-4
_IMPROVEMENT_TOL = 1e-12
_P_GRID = (0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)


def optimal_rho(sq_norm_sum_plus: float, d: int) -> float:
    """
    rho* = (sqrt((2z+d)^2 + 8dz) - 2z - d) / (4z), z = ||x+y||^2.

    Evaluated as 2d / (sqrt((2z+d)^2 + 8dz) + 2z + d), which has no
    cancellation and gives rho* = 1 at z = 0.
    """
    z = float(sq_norm_sum_plus)
    if not math.isfinite(z) or z < 0:
        raise InvalidArgumentError(f"||x+y||^2 must be a non-negative number, got {z!r}")
    if d < 1:
        raise InvalidArgumentError(f"d must be positive, got {d!r}")
    b = 2 * z + d
    return 2.0 * d / (math.sqrt(b * b + 8.0 * d * z) + b)


def optimal_A_oprf(sq_norm_sum_plus: float, d: int) -> float:
    """
    Closed-form variance minimizer A = (1 - 1/rho*) / 8 for s = +1, real A.

    Args:
        sq_norm_sum_plus: ||x + y||^2 (or its dataset average)
        d: Dimension

    Returns:
        Real A, zero at z = 0 and negative for z > 0

    Raises:
        InvalidArgumentError: If z is negative
    """
    rho = optimal_rho(sq_norm_sum_plus, d)
    return (1.0 - 1.0 / rho) / 8.0


def _gerf_objective(stats: PairStats, s: int):
    z = stats.sq_norm_sum(s)

    def objective(v: np.ndarray) -> float:
        try:
            value = gerf_log_leading(complex(v[0], v[1]), s, stats.d, stats.sq_norm_x, stats.sq_norm_y, z)
        except InvalidParameterError:
            return 1e300
        return value if math.isfinite(value) else 1e300

    return objective


def optimize_A_complex(
    stats: PairStats,
    maxiter: Optional[int] = None,
    bound: Optional[float] = None
) -> Tuple[complex, int]:
    """
    Search the GERF parameters (A, s) with the lowest variance.

    Runs one bounded L-BFGS-B search over (Re A, Im A) per sign, started at
    A = 0. The closed-form OPRF point and A = 0 for both signs are kept as
    candidates, so the result is never worse than any of them.

    Args:
        stats: Pair statistics (single pair or dataset averages)
        maxiter: Iterations per search (settings default 50)
        bound: Box half-width for Re A (below) and Im A (settings default 10)

    Returns:
        (A, s) with Re(1 - 8A) > 0
    """
    settings = get_settings()
    maxiter = maxiter or settings.complex_search_maxiter
    bound = bound or settings.complex_search_bound

    candidates = [(0j, 1), (0j, -1), (complex(optimal_A_oprf(stats.sq_norm_sum_plus, stats.d)), 1)]
    for s in (1, -1):
        result = minimize(
            _gerf_objective(stats, s),
            x0=np.zeros(2),
            method='L-BFGS-B',
            bounds=[(-bound, _RE_A_CEILING), (-bound, bound)],
            options={'maxiter': maxiter},
        )
        if np.all(np.isfinite(result.x)):
            candidates.append((complex(result.x[0], result.x[1]), s))
        else:
            logger.warning(f"Complex A search for s={s} did not return a finite point")

    best_A, best_s = candidates[0]
    best_value = gerf_log_leading(best_A, best_s, stats.d, stats.sq_norm_x, stats.sq_norm_y,
                                  stats.sq_norm_sum(best_s))
    for A, s in candidates[1:]:
        value = gerf_log_leading(A, s, stats.d, stats.sq_norm_x, stats.sq_norm_y, stats.sq_norm_sum(s))
        if value < best_value - _IMPROVEMENT_TOL:
            best_A, best_s, best_value = A, s, value

    logger.debug(f"GERF search picked A={best_A}, s={best_s}, log leading={best_value:.6g}")
    return complex(best_A.real + 0.0, best_A.imag + 0.0), best_s


def optimal_lambda(stats: PairStats) -> float:
    """
    Poisson rate minimizing the PoisRF variance: sqrt(sum_l x_l^2 y_l^2 / d).

    Raises:
        InvalidArgumentError: If the statistic is zero (the variance is then
            increasing in lambda and has no interior minimum)
    """
    if stats.sum_sq_prod <= 0:
        raise InvalidArgumentError("sum of x_l^2 y_l^2 is zero; lambda has no interior optimum")
    return math.sqrt(stats.sum_sq_prod / stats.d)


def optimize_p(
    stats: PairStats,
    maxiter: Optional[int] = None,
    margin: Optional[float] = None
) -> float:
    """
    Geometric p minimizing the GeomRF variance on (margin, 1 - margin).

    A coarse grid including both interval ends brackets the minimum, then
    bounded Brent refines it; the best point seen is returned.

    Args:
        stats: Pair statistics
        maxiter: Brent iteration budget (settings default 100)
        margin: Distance kept from 0 and 1 (settings default 1e-6)

    Returns:
        p strictly inside (0, 1)
    """
    settings = get_settings()
    maxiter = maxiter or settings.brent_maxiter
    margin = margin or settings.geom_p_margin
    low, high = margin, 1.0 - margin

    def objective(p: float) -> float:
        return var_geom(p, stats).log_leading

    grid = [low] + [p for p in _P_GRID if low < p < high] + [high]
    values = [objective(p) for p in grid]
    best_index = int(np.argmin(values))
    best_p, best_value = grid[best_index], values[best_index]

    # refine inside the grid cell around the best point
    lo = grid[max(best_index - 1, 0)]
    hi = grid[min(best_index + 1, len(grid) - 1)]
    if hi > lo:
        result = minimize_scalar(
            objective,
            bounds=(lo, hi),
            method='bounded',
            options={'maxiter': maxiter, 'xatol': 1e-10},
        )
        if not result.success:
            logger.warning(f"Brent search for p stopped early: {result.message}")
        if low <= result.x <= high and result.fun < best_value:
            best_p, best_value = float(result.x), float(result.fun)

    return float(best_p)
