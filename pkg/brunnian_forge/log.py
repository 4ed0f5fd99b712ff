"""Logging setup: library modules log, the CLI decides where it goes"""

import logging

from rich.console import Console
from rich.logging import RichHandler

_configured = False


def configure_logging(level: str = "WARNING") -> None:
    """Route the package logger to stderr through rich.

    Args:
        level: Standard logging level name
    """
    global _configured

    logger = logging.getLogger("brunnian_forge")
    logger.setLevel(level.upper())
    if _configured:
        return

    handler = RichHandler(
        console=Console(stderr=True), show_path=False, rich_tracebacks=True
    )
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.propagate = False
    _configured = True
