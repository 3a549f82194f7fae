"""
Interface definitions using Python Protocols.

Protocols give structural contracts: any class with the right methods
satisfies them without inheriting from them.

    class ShapeValidator:
        def validate(self, data: Any) -> bool:
            return getattr(data, 'ndim', 0) == 2

    validator: IValidator = ShapeValidator()
"""

from typing import Protocol, Any, runtime_checkable, TYPE_CHECKING

import numpy as np

if TYPE_CHECKING:
    from ..mechanisms.base import FeatureMatrix, Side


@runtime_checkable
class IValidator(Protocol):
    """
    Protocol defining the contract for validator classes.

    Implementations:
    - ArrayValidator: checks input matrices (rank, finiteness, dimension)
    - DatasetValidator: checks labelled datasets (labels within class range)
    """

    def validate(self, data: Any) -> bool:
        """
        Validate data according to the validator's rules.

        Args:
            data: The data to validate

        Returns:
            True if the data is valid, False otherwise. Never raises.
        """
        ...


@runtime_checkable
class IFeatureMap(Protocol):
    """
    Protocol for a random feature map with its randomness already drawn.

    Implementations:
    - GerfFeatureMap: TrigRF, PosRF, GERF and OPRF over a ProjectionEnsemble
    - DiscreteFeatureMap: PoisRF, GeomRF and their shifted variants
    """

    @property
    def feature_count(self) -> int:
        """Number of random features M."""
        ...

    @property
    def is_complex(self) -> bool:
        """Whether feature values may carry a nonzero imaginary part."""
        ...

    def featurize(self, X: np.ndarray, side: 'Side') -> 'FeatureMatrix':
        """Evaluate f^(1) (side=first) or f^(2) (side=second) on every row of X."""
        ...
