"""
Tests for Gaussian projection ensembles.
"""

import pytest
import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.core.rng import RngState
from src.projections.ensemble import (
    EnsembleMode,
    ProjectionEnsemble,
    sample_iid,
    sample_orthogonal,
    sample_projections,
)


class TestIidEnsemble:
    """Test i.i.d. projections."""

    def test_shape_and_mode(self):
        """Test the ensemble is M x d in iid mode."""
        ens = sample_iid(RngState(0), 7, 3)

        assert ens.rows.shape == (7, 3)
        assert ens.count == 7
        assert ens.dim == 3
        assert ens.mode is EnsembleMode.IID

    def test_deterministic(self):
        """Test the same seed gives the same rows."""
        a = sample_iid(RngState(11), 5, 4)
        b = sample_iid(RngState(11), 5, 4)

        np.testing.assert_array_equal(a.rows, b.rows)

    def test_squared_norm_mean(self):
        """E||omega||^2 = d for standard Gaussian rows."""
        ens = sample_iid(RngState(1), 20000, 3)

        assert abs(ens.sq_norms.mean() - 3.0) < 0.1

    def test_invalid_counts(self):
        """Test non-positive M or d raise."""
        with pytest.raises(InvalidArgumentError):
            sample_iid(RngState(0), 0, 3)
        with pytest.raises(InvalidArgumentError):
            sample_iid(RngState(0), 3, 0)


class TestOrthogonalEnsemble:
    """Test block-orthogonal projections."""

    def test_rows_orthogonal_within_block(self):
        """Rows of one block have exactly orthogonal directions."""
        ens = sample_orthogonal(RngState(2), 10, 4)

        for start in range(0, ens.count, ens.dim):
            rows = ens.rows[start:start + ens.dim]
            gram = rows @ rows.T
            off_diagonal = gram - np.diag(np.diag(gram))
            assert np.max(np.abs(off_diagonal)) < 1e-10 * np.max(np.diag(gram))

    def test_blocks_independent(self):
        """M = 10, d = 4: rows from different blocks are not orthogonal."""
        ens = sample_orthogonal(RngState(2), 10, 4)

        assert ens.rows.shape == (10, 4)
        assert ens.mode is EnsembleMode.ORTHOGONAL
        assert abs(ens.rows[0] @ ens.rows[4]) > 1e-8

    def test_marginal_norms(self):
        """Row lengths follow the chi distribution of a d-dimensional Gaussian."""
        ens = sample_orthogonal(RngState(3), 20000, 3)

        assert abs(ens.sq_norms.mean() - 3.0) < 0.1

    def test_dispatch(self):
        """Test sample_projections selects the mode."""
        ens = sample_projections(RngState(0), 6, 3, 'orthogonal')
        assert ens.mode is EnsembleMode.ORTHOGONAL

        ens = sample_projections(RngState(0), 6, 3)
        assert ens.mode is EnsembleMode.IID


class TestProjectionEnsemble:
    """Test the ensemble container."""

    def test_rows_read_only(self):
        """Test rows cannot be modified in place."""
        ens = ProjectionEnsemble(rows=np.ones((2, 2)), mode='iid')

        with pytest.raises(ValueError):
            ens.rows[0, 0] = 5.0

    def test_rejects_empty(self):
        """Test an empty matrix is rejected."""
        with pytest.raises(InvalidArgumentError):
            ProjectionEnsemble(rows=np.ones((0, 2)), mode='iid')
