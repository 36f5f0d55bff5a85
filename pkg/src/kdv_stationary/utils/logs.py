"""Diagnostic logging through rich on stderr."""

import logging

from rich.console import Console
from rich.logging import RichHandler

from ..config.env import log_level_from_environment

PACKAGE_LOGGER = "kdv_stationary"


def configure_logging(level: int | None = None) -> logging.Logger:
    """Install a RichHandler on the package logger.

    The level comes from KDV_STATIONARY_LOG_LEVEL unless given. Calling this
    again replaces the handler instead of stacking a second one.
    """
    if level is None:
        level = log_level_from_environment()

    logger = logging.getLogger(PACKAGE_LOGGER)
    for handler in list(logger.handlers):
        if getattr(handler, "_kdv_stationary", False):
            logger.removeHandler(handler)

    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
        markup=False,
    )
    handler._kdv_stationary = True
    handler.setLevel(level)
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
