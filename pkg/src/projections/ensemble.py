"""
Gaussian projection ensembles.

Every row of an ensemble is marginally N(0, I_d). In orthogonal mode the
rows are grouped in blocks of at most d rows whose directions are exactly
orthogonal; row lengths are drawn independently of the directions.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.exceptions import InvalidArgumentError
from ..core.logging_config import get_logger
from ..core.rng import RngState
from ..validators.array_validator import ensure_count

logger = get_logger(__name__)

# Relative pivot size below which a Gaussian block counts as rank deficient
_RANK_TOLERANCE = 1e-12
_MAX_BLOCK_REDRAWS = 16


class EnsembleMode(str, Enum):
    """Sampling mode of a projection ensemble."""

    IID = 'iid'
    ORTHOGONAL = 'orthogonal'


@dataclass(frozen=True, eq=False)
class ProjectionEnsemble:
    """Immutable M x d projection matrix; row m is omega_m."""

    rows: np.ndarray
    mode: EnsembleMode

    def __post_init__(self):
        rows = np.array(self.rows, dtype=float)
        if rows.ndim != 2 or rows.shape[0] < 1 or rows.shape[1] < 1:
            raise InvalidArgumentError(f"ensemble rows must be a non-empty matrix, got {rows.shape}")
        rows.setflags(write=False)
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'mode', EnsembleMode(self.mode))

    @property
    def count(self) -> int:
        """Number of projections M."""
        return self.rows.shape[0]

    @property
    def dim(self) -> int:
        """Input dimension d."""
        return self.rows.shape[1]

    @property
    def sq_norms(self) -> np.ndarray:
        """Squared row norms ||omega_m||^2."""
        return np.einsum('md,md->m', self.rows, self.rows)


def sample_iid(rng: RngState, M: int, d: int) -> ProjectionEnsemble:
    """
    Draw M independent standard Gaussian projections.

    Args:
        rng: Random stream, advanced by M*d normal draws
        M: Number of projections
        d: Dimension

    Returns:
        ProjectionEnsemble in iid mode
    """
    M = ensure_count(M, 'M')
    d = ensure_count(d, 'd')
    rows = rng.generator.standard_normal((M, d))
    return ProjectionEnsemble(rows=rows, mode=EnsembleMode.IID)


def _orthonormal_block(rng: RngState, d: int) -> np.ndarray:
    """Rows of a Haar-distributed d x d orthogonal matrix."""
    for attempt in range(_MAX_BLOCK_REDRAWS):
        gaussian = rng.generator.standard_normal((d, d))
        q, r = np.linalg.qr(gaussian)
        pivots = np.abs(np.diag(r))
        if pivots.min() > _RANK_TOLERANCE * max(pivots.max(), 1.0):
            # sign fix makes the factorisation unique, hence Haar distributed
            q = q * np.sign(np.diag(r))
            return q.T
        logger.warning(f"Rank-deficient Gaussian block (attempt {attempt + 1}), redrawing")
    raise InvalidArgumentError(f"could not draw a full-rank {d}x{d} Gaussian block")


def sample_orthogonal(rng: RngState, M: int, d: int) -> ProjectionEnsemble:
    """
    Draw M projections in independent orthogonal blocks of at most d rows.

    Each block orthogonalises an i.i.d. Gaussian d x d draw; each row is then
    rescaled to the norm of a fresh d-dimensional Gaussian vector.

    Args:
        rng: Random stream
        M: Number of projections
        d: Dimension

    Returns:
        ProjectionEnsemble in orthogonal mode
    """
    M = ensure_count(M, 'M')
    d = ensure_count(d, 'd')

    blocks = []
    remaining = M
    while remaining > 0:
        size = min(d, remaining)
        directions = _orthonormal_block(rng, d)[:size]
        lengths = np.linalg.norm(rng.generator.standard_normal((size, d)), axis=1)
        blocks.append(directions * lengths[:, None])
        remaining -= size

    return ProjectionEnsemble(rows=np.vstack(blocks), mode=EnsembleMode.ORTHOGONAL)


def sample_projections(rng: RngState, M: int, d: int, mode='iid') -> ProjectionEnsemble:
    """Draw an ensemble in the requested mode ('iid' or 'orthogonal')."""
    mode = EnsembleMode(mode)
    if mode is EnsembleMode.ORTHOGONAL:
        return sample_orthogonal(rng, M, d)
    return sample_iid(rng, M, d)
