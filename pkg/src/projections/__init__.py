"""
Projection sampling module.

Seeded i.i.d. and block-orthogonal Gaussian projection ensembles.
"""

from ..core.rng import RngState
from .ensemble import (
    EnsembleMode,
    ProjectionEnsemble,
    sample_iid,
    sample_orthogonal,
    sample_projections,
)

__all__ = [
    'RngState',
    'EnsembleMode',
    'ProjectionEnsemble',
    'sample_iid',
    'sample_orthogonal',
    'sample_projections',
]
