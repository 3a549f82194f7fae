"""
Exact kernel oracles.

Dense O(L L' d) reference computations the random-feature estimates are
compared against.
"""

import numpy as np
from scipy.spatial.distance import cdist
from scipy.special import softmax

from ..mechanisms.base import KernelMode
from ..validators.array_validator import ensure_matrix, ensure_pair

# Gaussian K(x, y) = exp(-||x - y||^2 / 2) or softmax K(x, y) = exp(x^T y)
KernelKind = KernelMode


def exact_kernel_matrix(X: np.ndarray, Y: np.ndarray, kind: KernelKind = KernelKind.GAUSSIAN) -> np.ndarray:
    """
    Dense kernel Gram matrix (K(x_i, y_j)).

    Args:
        X: L x d
        Y: L' x d
        kind: gaussian or softmax

    Returns:
        L x L' matrix
    """
    X, Y = ensure_pair(X, Y)
    if KernelKind(kind) is KernelKind.GAUSSIAN:
        return np.exp(-0.5 * cdist(X, Y, 'sqeuclidean'))
    return np.exp(X @ Y.T)


def exact_softmax_attention(Q: np.ndarray, K: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Bidirectional softmax attention softmax(Q K^T / sqrt(d)) V."""
    Q, K = ensure_pair(Q, K)
    V = ensure_matrix(V, 'V')
    scores = Q @ K.T / np.sqrt(Q.shape[1])
    return softmax(scores, axis=1) @ V


def nadaraya_watson_scores(
    train: np.ndarray,
    targets: np.ndarray,
    query: np.ndarray,
    kind: KernelKind = KernelKind.GAUSSIAN
) -> np.ndarray:
    """
    Unnormalized kernel regression sum_i K(q, o_i) r_i for every query row.

    The denominator sum_i K(q, o_i) is common to all outputs of a query and
    is left out.
    """
    weights = exact_kernel_matrix(query, train, kind)
    return weights @ np.asarray(targets, dtype=float)


def relative_frobenius_error(approx: np.ndarray, exact: np.ndarray) -> float:
    """||approx - exact||_F / ||exact||_F (absolute error when exact is zero)."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    scale = np.linalg.norm(exact)
    error = np.linalg.norm(approx - exact)
    return float(error / scale) if scale > 0 else float(error)
