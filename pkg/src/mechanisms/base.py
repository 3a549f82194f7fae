"""
Base feature-map classes.

Provides the feature container, the enums shared by every mechanism and
the abstract base class all feature maps derive from.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.exceptions import NumericOverflowError
from ..core.logging_config import get_logger


class Side(str, Enum):
    """Which of the two feature maps f^(1), f^(2) is evaluated."""

    FIRST = 'first'
    SECOND = 'second'


class KernelMode(str, Enum):
    """Target kernel of an estimator."""

    GAUSSIAN = 'gaussian'
    SOFTMAX = 'softmax'


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    """
    L x M evaluated feature values.

    Real mechanisms store a real array (imaginary part identically zero);
    complex mechanisms store a complex array.
    """

    values: np.ndarray
    side: Side
    kernel_mode: KernelMode

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    @property
    def shape(self) -> tuple:
        return self.values.shape

    @property
    def feature_count(self) -> int:
        return self.values.shape[1]


def softmax_log_prefactor(X: np.ndarray) -> np.ndarray:
    """log of exp(||x||^2 / 2) per row, the Gaussian-to-softmax rescaling."""
    return 0.5 * np.einsum('ld,ld->l', X, X)


def exponentiate_checked(log_values: np.ndarray, what: str) -> np.ndarray:
    """
    Exponentiate log-domain features and reject non-finite results.

    Raises:
        NumericOverflowError: naming the first row with a non-finite value
    """
    with np.errstate(over='ignore', invalid='ignore'):
        values = np.exp(log_values)
    finite = np.isfinite(values)
    if not finite.all():
        row = int(np.argwhere(~finite)[0][0])
        raise NumericOverflowError(
            f"{what} feature overflowed to a non-finite value in row {row}", row=row
        )
    return values


class BaseFeatureMap(ABC):
    """
    Abstract base class for all feature maps.

    A feature map binds a resolved mechanism to one draw of its randomness.
    """

    def __init__(self, kernel_mode: KernelMode = KernelMode.GAUSSIAN):
        """Initialize base feature map."""
        self.kernel_mode = KernelMode(kernel_mode)
        self.logger = get_logger(self.__class__.__name__)

    @property
    @abstractmethod
    def feature_count(self) -> int:
        """Number of random features M."""

    @property
    @abstractmethod
    def dim(self) -> int:
        """Input dimension d."""

    @property
    @abstractmethod
    def is_complex(self) -> bool:
        """Whether features may be complex."""

    @abstractmethod
    def featurize(self, X: np.ndarray, side: Side) -> FeatureMatrix:
        """
        Evaluate the feature map on every row of X.

        Args:
            X: L x d inputs
            side: Which map of the pair to evaluate

        Returns:
            FeatureMatrix of shape L x M
        """
