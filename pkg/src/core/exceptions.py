"""
Custom exception hierarchy for the application.

Every error carries the process exit code the CLI reports for it.
"""

from typing import Optional


class RFKError(Exception):
    """Base exception for all random-feature errors."""

    exit_code: int = 1


class InvalidArgumentError(RFKError):
    """Raised when shapes, counts or dimensions are inconsistent."""

    exit_code = 2


class InvalidParameterError(RFKError):
    """Raised when a mechanism parameter lies outside its domain."""

    exit_code = 2


class DataIOError(RFKError):
    """Raised when an input file is missing or cannot be parsed."""

    exit_code = 2

    def __init__(self, message: str, path: Optional[str] = None):
        super().__init__(message)
        self.path = path


class NumericOverflowError(RFKError):
    """Raised when a feature value or variance term is not finite."""

    exit_code = 3

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row


class DegenerateDenominatorError(RFKError):
    """Raised when an attention normaliser is non-positive or not finite."""

    exit_code = 3

    def __init__(self, message: str, row: Optional[int] = None):
        super().__init__(message)
        self.row = row
