"""
Mechanism parameters.

Holds the taxonomy of estimators and the scalar parameters each one needs,
plus the JSON-facing MechanismSpec.
"""

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional

import numpy as np
from scipy.special import gammaln

from ..core.exceptions import InvalidArgumentError, InvalidParameterError
from ..validators.array_validator import ensure_count
from .base import KernelMode


class MechanismKind(str, Enum):
    """Estimator families."""

    TRIG = 'trig'
    POS = 'pos'
    GERF = 'gerf'
    OPRF = 'oprf'
    POIS = 'pois'
    GEOM = 'geom'
    POIS_PLUS = 'pois_plus'
    GEOM_PLUS = 'geom_plus'

    @classmethod
    def parse(cls, name: str) -> 'MechanismKind':
        """Parse a CLI/JSON name such as 'oprf', 'PosRF' or 'geomrf+'."""
        key = name.strip().lower().replace('-', '_')
        plus = key.endswith('+') or key.endswith('_plus')
        key = key.rstrip('+')
        if key.endswith('_plus'):
            key = key[:-len('_plus')]
        if key not in ('gerf', 'oprf') and key.endswith('rf'):
            key = key[:-2]
        if plus:
            key += '_plus'
        try:
            return cls(key)
        except ValueError:
            valid = ', '.join(kind.value for kind in cls)
            raise InvalidArgumentError(f"unknown mechanism {name!r}; expected one of: {valid}")

    @property
    def is_gerf_family(self) -> bool:
        return self in (MechanismKind.TRIG, MechanismKind.POS, MechanismKind.GERF, MechanismKind.OPRF)

    @property
    def is_discrete(self) -> bool:
        return not self.is_gerf_family

    @property
    def is_plus(self) -> bool:
        return self in (MechanismKind.POIS_PLUS, MechanismKind.GEOM_PLUS)

    @property
    def is_complex(self) -> bool:
        """Complex-valued features (real and imaginary part both carry information)."""
        return self in (MechanismKind.TRIG, MechanismKind.GERF)

    @property
    def is_positive(self) -> bool:
        """Strictly positive features on any input."""
        return self in (MechanismKind.POS, MechanismKind.OPRF,
                        MechanismKind.POIS_PLUS, MechanismKind.GEOM_PLUS)

    @property
    def discrete_family(self) -> Optional['DiscreteFamily']:
        if self in (MechanismKind.POIS, MechanismKind.POIS_PLUS):
            return DiscreteFamily.POISSON
        if self in (MechanismKind.GEOM, MechanismKind.GEOM_PLUS):
            return DiscreteFamily.GEOMETRIC
        return None


def _clean_complex(value: complex) -> complex:
    # -0.0 imaginary parts would put principal roots on the wrong side of the cut
    return complex(value.real + 0.0, value.imag + 0.0)


@dataclass(frozen=True)
class GerfParams:
    """Free parameters (A, s) of a generalized exponential map and the dependent B, C, D."""

    A: complex
    s: int
    B: complex
    C: float
    D: complex
    log_D: complex
    d: int

    @property
    def is_real(self) -> bool:
        """B, C, D are real (and features positive) when A is real and s = +1."""
        return self.A.imag == 0 and self.s == 1


def make_gerf_params(A: complex, s: int, d: int) -> GerfParams:
    """
    Build GERF parameters satisfying the unbiasedness constraints.

    B = sqrt(s(1 - 4A)), C = -(s + 1)/2, D = (1 - 4A)^(d/4), principal roots.

    Args:
        A: Free complex parameter with Re(1 - 4A) > 0
        s: Sign in {-1, +1}
        d: Dimension

    Returns:
        GerfParams

    Raises:
        InvalidParameterError: If Re(1 - 4A) <= 0 or s is not a sign
    """
    A = _clean_complex(complex(A))
    if s not in (-1, 1):
        raise InvalidParameterError(f"s must be -1 or +1, got {s!r}")
    d = ensure_count(d, 'd')

    base = _clean_complex(1 - 4 * A)
    if base.real <= 0:
        raise InvalidParameterError(f"Re(1 - 4A) must be positive, got A={A}")

    B = cmath.sqrt(_clean_complex(s * base))
    log_D = (d / 4.0) * cmath.log(base)
    D = cmath.exp(log_D)
    return GerfParams(A=A, s=int(s), B=B, C=-(s + 1) / 2.0, D=D, log_D=log_D, d=d)


class DiscreteFamily(str, Enum):
    """Discrete laws on {0, 1, 2, ...} inducing random features."""

    POISSON = 'poisson'
    GEOMETRIC = 'geometric'


@dataclass(frozen=True)
class DiscreteParams:
    """Poisson rate lam or geometric success probability p."""

    family: DiscreteFamily
    lam: Optional[float] = None
    p: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, 'family', DiscreteFamily(self.family))
        if self.family is DiscreteFamily.POISSON:
            if self.lam is None or not math.isfinite(self.lam) or self.lam <= 0:
                raise InvalidParameterError(f"Poisson rate must be positive, got {self.lam!r}")
        else:
            if self.p is None or not 0 < self.p < 1:
                raise InvalidParameterError(f"geometric p must lie in (0, 1), got {self.p!r}")

    @classmethod
    def poisson(cls, lam: float) -> 'DiscreteParams':
        return cls(DiscreteFamily.POISSON, lam=float(lam))

    @classmethod
    def geometric(cls, p: float) -> 'DiscreteParams':
        return cls(DiscreteFamily.GEOMETRIC, p=float(p))

    def log_pmf(self, k: np.ndarray) -> np.ndarray:
        """log p_k for non-negative integer counts k."""
        k = np.asarray(k, dtype=float)
        if self.family is DiscreteFamily.POISSON:
            return -self.lam + k * math.log(self.lam) - gammaln(k + 1)
        return math.log(self.p) + k * math.log1p(-self.p)


@dataclass(frozen=True, eq=False)
class ShiftSpec:
    """Coordinatewise offset c and positivity floor epsilon."""

    c: np.ndarray
    epsilon: float

    def __post_init__(self):
        c = np.array(self.c, dtype=float).reshape(-1)
        c.setflags(write=False)
        object.__setattr__(self, 'c', c)
        if not self.epsilon > 0:
            raise InvalidParameterError(f"epsilon must be positive, got {self.epsilon!r}")


_GERF_KINDS = (MechanismKind.GERF, MechanismKind.OPRF)


@dataclass(frozen=True, eq=False)
class MechanismSpec:
    """
    Which estimator to use plus its scalar parameters.

    Data-dependent parameters (A for gerf/oprf, lam or p for the discrete
    kinds, the shift for plus kinds) may be left unset and filled in by
    the fitting step; epsilon is the floor used when a shift gets fitted.
    """

    kind: MechanismKind
    kernel_mode: KernelMode = KernelMode.GAUSSIAN
    gerf: Optional[GerfParams] = None
    discrete: Optional[DiscreteParams] = None
    shift: Optional[ShiftSpec] = None
    epsilon: float = 1e-8

    def __post_init__(self):
        object.__setattr__(self, 'kind', MechanismKind(self.kind))
        object.__setattr__(self, 'kernel_mode', KernelMode(self.kernel_mode))
        self.validate()

    def validate(self) -> None:
        """
        Check which optional parts may be present for this kind.

        Raises:
            InvalidArgumentError: If parameters do not match the kind
        """
        kind = self.kind
        if self.gerf is not None and kind not in _GERF_KINDS:
            raise InvalidArgumentError(f"{kind.value} does not take GERF parameters")
        if kind is MechanismKind.OPRF and self.gerf is not None and not self.gerf.is_real:
            raise InvalidParameterError("OPRF requires real A and s = +1")
        if self.discrete is not None:
            if not kind.is_discrete:
                raise InvalidArgumentError(f"{kind.value} does not take a discrete law")
            if self.discrete.family is not kind.discrete_family:
                raise InvalidArgumentError(
                    f"{kind.value} requires a {kind.discrete_family.value} law"
                )
        if self.shift is not None and not kind.is_plus:
            raise InvalidArgumentError(f"{kind.value} does not take a shift")
        if not self.epsilon > 0:
            raise InvalidParameterError(f"epsilon must be positive, got {self.epsilon!r}")

    @property
    def is_resolved(self) -> bool:
        """Whether every parameter needed for featurization is set."""
        kind = self.kind
        if kind in (MechanismKind.TRIG, MechanismKind.POS):
            return True
        if kind in _GERF_KINDS:
            return self.gerf is not None
        if kind.is_plus:
            return self.discrete is not None and self.shift is not None
        return self.discrete is not None

    def with_updates(self, **changes) -> 'MechanismSpec':
        """Copy with some fields replaced."""
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        """JSON object with fields kind, A_re, A_im, s, lambda, p, epsilon, kernel_mode."""
        gerf = self.gerf
        discrete = self.discrete
        if self.kind is MechanismKind.TRIG:
            A, s = 0j, -1
        elif self.kind is MechanismKind.POS:
            A, s = 0j, 1
        elif gerf is not None:
            A, s = gerf.A, gerf.s
        else:
            A, s = None, None
        return {
            'kind': self.kind.value,
            'A_re': None if A is None else float(A.real),
            'A_im': None if A is None else float(A.imag),
            's': s,
            'lambda': discrete.lam if discrete is not None else None,
            'p': discrete.p if discrete is not None else None,
            'epsilon': self.shift.epsilon if self.shift is not None else (
                self.epsilon if self.kind.is_plus else None),
            'kernel_mode': self.kernel_mode.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], dim: Optional[int] = None) -> 'MechanismSpec':
        """
        Parse the JSON object produced by to_dict.

        Args:
            data: Mapping with at least 'kind'
            dim: Input dimension, required to rebuild GERF parameters

        Raises:
            InvalidArgumentError: On unknown kinds or missing dimension
        """
        if 'kind' not in data:
            raise InvalidArgumentError("mechanism object requires a 'kind' field")
        kind = MechanismKind.parse(str(data['kind']))
        kernel_mode = KernelMode(data.get('kernel_mode') or KernelMode.GAUSSIAN.value)
        epsilon = data.get('epsilon')
        fields: Dict[str, Any] = {'kind': kind, 'kernel_mode': kernel_mode}
        if epsilon is not None:
            fields['epsilon'] = float(epsilon)

        if kind in _GERF_KINDS and data.get('A_re') is not None:
            if dim is None:
                raise InvalidArgumentError("dimension is required to rebuild GERF parameters")
            A = complex(float(data['A_re']), float(data.get('A_im') or 0.0))
            s = int(data['s']) if data.get('s') is not None else 1
            fields['gerf'] = make_gerf_params(A, s, dim)

        family = kind.discrete_family
        if family is DiscreteFamily.POISSON and data.get('lambda') is not None:
            fields['discrete'] = DiscreteParams.poisson(data['lambda'])
        elif family is DiscreteFamily.GEOMETRIC and data.get('p') is not None:
            fields['discrete'] = DiscreteParams.geometric(data['p'])

        return cls(**fields)
