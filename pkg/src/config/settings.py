"""
Application settings and configuration.

Centralizes all configurable values. Values come from the environment,
optionally seeded from a .env file.
"""

import os
from typing import Optional, Dict, Any
from dotenv import load_dotenv

load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == 'true'


class Settings:
    """
    Application settings.

    Centralizes all configuration values.
    """

    def __init__(self):
        """Initialize settings from environment and defaults."""
        # Output
        self.output_dir = os.getenv('RFK_OUTPUT_DIR', 'output')
        self.default_seed = int(os.getenv('RFK_DEFAULT_SEED', '0'))
        self.include_timing = _env_bool('RFK_INCLUDE_TIMING', 'false')

        # Mechanism settings
        self.shift_epsilon = float(os.getenv('RFK_SHIFT_EPSILON', '1e-8'))

        # Optimizer budgets
        self.brent_maxiter = int(os.getenv('RFK_BRENT_MAXITER', '100'))
        self.complex_search_maxiter = int(os.getenv('RFK_COMPLEX_SEARCH_MAXITER', '50'))
        self.complex_search_bound = float(os.getenv('RFK_COMPLEX_SEARCH_BOUND', '10.0'))
        self.geom_p_margin = float(os.getenv('RFK_GEOM_P_MARGIN', '1e-6'))

        # Classification
        self.classify_seeds = int(os.getenv('RFK_CLASSIFY_SEEDS', '50'))
        self.validation_fraction = float(os.getenv('RFK_VALIDATION_FRACTION', '0.05'))
        self.sigma_grid_min = float(os.getenv('RFK_SIGMA_GRID_MIN', '1e-2'))
        self.sigma_grid_max = float(os.getenv('RFK_SIGMA_GRID_MAX', '1e2'))
        self.sigma_grid_size = int(os.getenv('RFK_SIGMA_GRID_SIZE', '10'))

        # Logging Settings
        self.log_level = os.getenv('RFK_LOG_LEVEL', 'INFO')
        self.log_format = os.getenv(
            'RFK_LOG_FORMAT',
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        self.log_file = os.getenv('RFK_LOG_FILE') or None

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get a configuration value.

        Args:
            key: Configuration key (supports dot notation)
            default: Default value if not found

        Returns:
            Configuration value
        """
        keys = key.split('.')
        value = self

        for k in keys:
            if hasattr(value, k):
                value = getattr(value, k)
            else:
                return default

        return value if value is not None else default

    def validate(self) -> bool:
        """
        Validate that settings lie in their admissible ranges.

        Returns:
            True if valid, False otherwise
        """
        if self.shift_epsilon <= 0:
            return False
        if not 0 < self.geom_p_margin < 0.5:
            return False
        if self.brent_maxiter < 1 or self.complex_search_maxiter < 1:
            return False
        if self.complex_search_bound <= 0:
            return False
        if self.classify_seeds < 1 or self.sigma_grid_size < 1:
            return False
        if not 0 <= self.validation_fraction < 1:
            return False
        if not 0 < self.sigma_grid_min < self.sigma_grid_max:
            return False
        return True

    def to_dict(self) -> Dict[str, Any]:
        """Convert settings to dictionary."""
        return {
            'output_dir': self.output_dir,
            'default_seed': self.default_seed,
            'include_timing': self.include_timing,
            'shift_epsilon': self.shift_epsilon,
            'brent_maxiter': self.brent_maxiter,
            'complex_search_maxiter': self.complex_search_maxiter,
            'complex_search_bound': self.complex_search_bound,
            'geom_p_margin': self.geom_p_margin,
            'classify_seeds': self.classify_seeds,
            'validation_fraction': self.validation_fraction,
            'sigma_grid_min': self.sigma_grid_min,
            'sigma_grid_max': self.sigma_grid_max,
            'sigma_grid_size': self.sigma_grid_size,
            'log_level': self.log_level,
            'log_file': self.log_file,
        }


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def set_settings(settings: Optional[Settings]):
    """Set the global settings instance (useful for testing)."""
    global _settings
    _settings = settings
