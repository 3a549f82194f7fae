"""
Feature-map construction.

Turns a resolved MechanismSpec plus drawn randomness into a feature map.
"""

from typing import Union

from ..core.exceptions import InvalidArgumentError
from ..core.rng import RngState
from ..projections.ensemble import EnsembleMode, ProjectionEnsemble, sample_projections
from .discrete import DiscreteFeatureMap, DiscreteSample, sample_discrete
from .gerf import GerfFeatureMap
from .params import GerfParams, MechanismKind, MechanismSpec, make_gerf_params

Randomness = Union[ProjectionEnsemble, DiscreteSample]


def gerf_params_for(spec: MechanismSpec, d: int) -> GerfParams:
    """GERF parameters of a GERF-family spec; fixed for TrigRF and PosRF."""
    if spec.kind is MechanismKind.TRIG:
        return make_gerf_params(0.0, -1, d)
    if spec.kind is MechanismKind.POS:
        return make_gerf_params(0.0, 1, d)
    if spec.gerf is None:
        raise InvalidArgumentError(f"{spec.kind.value} parameters have not been fitted")
    if spec.gerf.d != d:
        return make_gerf_params(spec.gerf.A, spec.gerf.s, d)
    return spec.gerf


def draw_randomness(
    spec: MechanismSpec,
    rng: RngState,
    M: int,
    d: int,
    orthogonal: bool = False
) -> Randomness:
    """
    Draw the randomness a mechanism needs.

    GERF-family kinds get a projection ensemble (orthogonal blocks when
    requested); discrete kinds get a count sample from their fitted law.
    """
    if spec.kind.is_gerf_family:
        mode = EnsembleMode.ORTHOGONAL if orthogonal else EnsembleMode.IID
        return sample_projections(rng, M, d, mode)
    if spec.discrete is None:
        raise InvalidArgumentError(f"{spec.kind.value} law has not been fitted")
    return sample_discrete(rng, spec.discrete, M, d)


def build_feature_map(spec: MechanismSpec, randomness: Randomness):
    """
    Bind a resolved spec to drawn randomness.

    Returns:
        GerfFeatureMap or DiscreteFeatureMap

    Raises:
        InvalidArgumentError: If the spec is unresolved or the randomness has the wrong type
    """
    if not spec.is_resolved:
        raise InvalidArgumentError(f"{spec.kind.value} spec is missing fitted parameters")
    if spec.kind.is_gerf_family:
        if not isinstance(randomness, ProjectionEnsemble):
            raise InvalidArgumentError(f"{spec.kind.value} needs a ProjectionEnsemble")
        params = gerf_params_for(spec, randomness.dim)
        return GerfFeatureMap(params, randomness, spec.kernel_mode)

    if not isinstance(randomness, DiscreteSample):
        raise InvalidArgumentError(f"{spec.kind.value} needs a DiscreteSample")
    shift = spec.shift if spec.kind.is_plus else None
    if shift is not None and shift.c.shape[0] != randomness.dim:
        raise InvalidArgumentError("shift dimension does not match the sample")
    return DiscreteFeatureMap(spec.discrete, randomness, spec.kernel_mode, shift)
