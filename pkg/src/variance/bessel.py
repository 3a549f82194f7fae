"""
Modified Bessel function of order zero in the log domain.
"""

import numpy as np
from scipy.special import gammaln, i0e

from ..core.exceptions import InvalidArgumentError

_SERIES_SWITCH = 2.0
_SERIES_TERMS = 30
_SERIES_LOG_DEN = 2.0 * gammaln(np.arange(1, _SERIES_TERMS + 1) + 1.0)


def _log_i0_series(t: np.ndarray) -> np.ndarray:
    # log1p(sum_{k>=1} (t/2)^(2k) / (k!)^2) keeps full relative accuracy near t = 0
    u = (0.25 * t * t)[..., None]
    k = np.arange(1, _SERIES_TERMS + 1)
    with np.errstate(divide='ignore'):
        log_terms = k * np.log(u) - _SERIES_LOG_DEN
    return np.log1p(np.exp(log_terms).sum(axis=-1))


def log_bessel_i0(t):
    """
    log I_0(t) for t >= 0, scalar or array.

    Small arguments use the Taylor series; elsewhere the exponentially
    scaled i0e is used, so large t never overflows.

    Raises:
        InvalidArgumentError: If any t is negative or not finite
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(~np.isfinite(t_arr)) or np.any(t_arr < 0):
        raise InvalidArgumentError("log_bessel_i0 needs finite non-negative arguments")

    small = t_arr <= _SERIES_SWITCH
    out = np.empty_like(t_arr)
    out[small] = _log_i0_series(t_arr[small])
    large = t_arr[~small]
    out[~small] = np.log(i0e(large)) + large
    return out if out.ndim else float(out)
