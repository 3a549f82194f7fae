"""
Random-feature mechanisms.

TrigRF, PosRF, GERF/OPRF, PoisRF, GeomRF and the shifted PoisRF+/GeomRF+,
each in Gaussian-kernel or softmax-kernel mode.
"""

from .base import BaseFeatureMap, FeatureMatrix, KernelMode, Side
from .params import (
    DiscreteFamily,
    DiscreteParams,
    GerfParams,
    MechanismKind,
    MechanismSpec,
    ShiftSpec,
    make_gerf_params,
)
from .gerf import GerfFeatureMap, featurize_gerf, gerf_feature_bound, gerf_log_features
from .discrete import DiscreteFeatureMap, DiscreteSample, featurize_discrete, sample_discrete
from .shift import apply_shift, fit_shift
from .factory import build_feature_map, draw_randomness, gerf_params_for

__all__ = [
    'BaseFeatureMap',
    'FeatureMatrix',
    'KernelMode',
    'Side',
    'DiscreteFamily',
    'DiscreteParams',
    'GerfParams',
    'MechanismKind',
    'MechanismSpec',
    'ShiftSpec',
    'make_gerf_params',
    'GerfFeatureMap',
    'featurize_gerf',
    'gerf_feature_bound',
    'gerf_log_features',
    'DiscreteFeatureMap',
    'DiscreteSample',
    'featurize_discrete',
    'sample_discrete',
    'apply_shift',
    'fit_shift',
    'build_feature_map',
    'draw_randomness',
    'gerf_params_for',
]
