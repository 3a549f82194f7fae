"""
Regex pattern definitions.

Centralizes the patterns used to read CSV files and CLI lists.
"""

import re
from typing import List, Optional


class PatternConfig:
    """
    Configuration for regex patterns.

    Compiles patterns once for performance.
    """

    def __init__(self):
        """Initialize and compile all patterns."""
        # A plain decimal or scientific literal, optionally signed
        self.numeric_token = re.compile(
            r'^\s*[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?\s*$'
        )
        self.nonfinite_token = re.compile(r'^\s*[-+]?(?:nan|inf|infinity)\s*$', re.IGNORECASE)

        # Comma or whitespace separated CLI lists: "oprf,pos" or "16 64"
        self.list_separator = re.compile(r'[,\s]+')

    def is_numeric(self, token: str) -> bool:
        """Check whether a CSV cell holds a number."""
        return bool(self.numeric_token.match(token) or self.nonfinite_token.match(token))

    def is_header_row(self, cells: List[str]) -> bool:
        """A row is a header when any of its cells is non-numeric."""
        return any(not self.is_numeric(cell) for cell in cells)

    def split_list(self, text: str) -> List[str]:
        """Split a CLI list argument into its non-empty items."""
        return [item for item in self.list_separator.split(text.strip()) if item]


# Global pattern instance
_patterns: Optional[PatternConfig] = None


def get_patterns() -> PatternConfig:
    """Get the global pattern configuration instance."""
    global _patterns
    if _patterns is None:
        _patterns = PatternConfig()
    return _patterns
