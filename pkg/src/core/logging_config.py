"""
Centralized logging configuration.

Every module obtains its logger through get_logger(__name__); only the
entry point calls setup_logging. Records go to stderr, stdout carries
nothing but the paths of written results.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL')


def parse_level(level: str) -> Optional[int]:
    """Logging constant for a level name, or None if the name is unknown."""
    name = str(level).strip().upper()
    return getattr(logging, name) if name in _LEVELS else None


def _handlers(log_file: Optional[str]) -> List[logging.Handler]:
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding='utf-8'))
    return handlers


def setup_logging(
    level: str = 'INFO',
    format_string: Optional[str] = None,
    log_file: Optional[str] = None
) -> logging.Logger:
    """
    Configure the root logger.

    Unknown level names fall back to INFO with a warning.

    Args:
        level: DEBUG, INFO, WARNING, ERROR or CRITICAL
        format_string: Record format (DEFAULT_FORMAT if None)
        log_file: Optional file receiving a copy of every record

    Returns:
        The root logger
    """
    numeric = parse_level(level)
    logging.basicConfig(
        level=logging.INFO if numeric is None else numeric,
        format=format_string or DEFAULT_FORMAT,
        handlers=_handlers(log_file),
        force=True
    )
    root = logging.getLogger()
    if numeric is None:
        root.warning(f"Unknown log level {level!r}, using INFO")
    return root


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)


def configure_from_settings(settings) -> logging.Logger:
    """Configure logging from log_level, log_format and log_file of a Settings object."""
    return setup_logging(
        level=settings.log_level,
        format_string=settings.log_format,
        log_file=settings.log_file
    )
