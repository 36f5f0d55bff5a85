"""Environment variable support.

Only log verbosity is read from the environment; numerics come from flags
and settings files so that results never depend on the shell.
"""

import logging
import os
from typing import Optional

ENV_PREFIX = "KDV_STATIONARY_"

ENV_LOG_LEVEL = f"{ENV_PREFIX}LOG_LEVEL"

LOG_LEVELS = {
    "silent": logging.CRITICAL + 10,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}
DEFAULT_LOG_LEVEL = "info"


def get_env_or_none(key: str) -> Optional[str]:
    """Get environment variable or None if not set or empty."""
    value = os.environ.get(key, "").strip()
    return value if value else None


def log_level_from_environment() -> int:
    """Logging level named by KDV_STATIONARY_LOG_LEVEL.

    Raises:
        ValueError: the variable holds an unknown level name.
    """
    name = (get_env_or_none(ENV_LOG_LEVEL) or DEFAULT_LOG_LEVEL).lower()
    if name not in LOG_LEVELS:
        choices = ", ".join(LOG_LEVELS)
        raise ValueError(f"Invalid {ENV_LOG_LEVEL}: '{name}'. Must be one of {choices}")
    return LOG_LEVELS[name]


def print_env_var_help() -> None:
    """Print help for environment variables."""
    from rich.console import Console
    from rich.table import Table

    console = Console()

    table = Table(title="Environment Variables", show_header=True, header_style="bold")
    table.add_column("Variable", style="cyan")
    table.add_column("Required", style="yellow")
    table.add_column("Default")
    table.add_column("Description")

    env_vars = [
        (ENV_LOG_LEVEL, "No", DEFAULT_LOG_LEVEL, "Diagnostic verbosity: silent, info or debug"),
    ]

    for var, required, default, desc in env_vars:
        table.add_row(var, required, default, desc)

    console.print(table)
