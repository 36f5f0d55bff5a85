"""Settings file loading and writing utilities."""

import json
from importlib import resources
from pathlib import Path
from typing import Optional

from .schema import SolverSettings


def load_settings(settings_path: str | Path) -> SolverSettings:
    """Load solver settings from a JSON file."""
    path = Path(settings_path)

    if not path.exists():
        raise FileNotFoundError(f"Settings file not found: {path}")

    with open(path) as f:
        data = json.load(f)

    return SolverSettings.model_validate(data)


def get_default_settings() -> SolverSettings:
    """Get the default settings from the bundled default.json.

    Uses importlib.resources so the bundled file resolves regardless of
    installation method (pip, editable install, zipapp).
    """
    from .. import data as data_package

    settings_file = resources.files(data_package).joinpath("default.json")
    settings_data = json.loads(settings_file.read_text(encoding="utf-8"))
    return SolverSettings.model_validate(settings_data)


def write_settings(settings: SolverSettings, output_path: str | Path) -> None:
    """Write settings to a JSON file."""
    path = Path(output_path)
    with open(path, "w") as f:
        json.dump(settings.model_dump(mode="json"), f, indent=2)
        f.write("\n")


def write_default_settings(output_path: str | Path) -> None:
    """Write the bundled default settings to a JSON file."""
    write_settings(get_default_settings(), output_path)


def merge_settings_with_cli(
    settings: Optional[SolverSettings],
    n_samples: Optional[int] = None,
    solve_tol: Optional[float] = None,
    quad_tol: Optional[float] = None,
    jobs: Optional[int] = None,
) -> SolverSettings:
    """Merge a settings file with CLI options.

    CLI options take precedence over file values.
    """
    base_settings = settings or get_default_settings()

    return base_settings.with_overrides(
        n_samples=n_samples,
        solve_tol=solve_tol,
        quad_tol=quad_tol,
        jobs=jobs,
    )
