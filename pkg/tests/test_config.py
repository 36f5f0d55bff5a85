"""Tests for configuration schema, loader and environment."""

import json
import logging
import tempfile
from pathlib import Path

import pytest

from kdv_stationary.config.env import (
    ENV_LOG_LEVEL,
    LOG_LEVELS,
    get_env_or_none,
    log_level_from_environment,
)
from kdv_stationary.config.loader import (
    get_default_settings,
    load_settings,
    merge_settings_with_cli,
    write_default_settings,
    write_settings,
)
from kdv_stationary.config.schema import RunConfig, SolverSettings, Tolerances
from kdv_stationary.numerics.potentials import EquationKind, NormalizedProblem
from kdv_stationary.numerics.profile import PhysicalProblem
from kdv_stationary.utils.logs import PACKAGE_LOGGER, configure_logging


class TestTolerances:
    """Tests for the Tolerances model."""

    def test_defaults(self):
        """Default tolerances match the documented values."""
        tolerances = Tolerances()
        assert tolerances.solve_tol == 1e-8
        assert tolerances.quad_tol == 1e-10
        assert tolerances.boundary_tol == 1e-6
        assert tolerances.energy_tol == 1e-6
        assert tolerances.ode_tol == 1e-5

    @pytest.mark.parametrize("value", [0.0, -1e-8, float("nan"), float("inf")])
    def test_rejects_nonpositive(self, value):
        """Tolerances must be positive and finite."""
        with pytest.raises(ValueError):
            Tolerances(solve_tol=value)


class TestSolverSettings:
    """Tests for the SolverSettings model."""

    def test_defaults(self):
        """2001 samples, one worker."""
        settings = SolverSettings()
        assert settings.n_samples == 2001
        assert settings.jobs == 1

    @pytest.mark.parametrize("n_samples", [5, 2000, -1])
    def test_sample_count_validation(self, n_samples):
        """n_samples must be odd and at least 7."""
        with pytest.raises(ValueError):
            SolverSettings(n_samples=n_samples)

    def test_jobs_validation(self):
        """At least one worker."""
        with pytest.raises(ValueError):
            SolverSettings(jobs=0)

    def test_with_overrides(self):
        """Test settings override."""
        settings = SolverSettings()

        overridden = settings.with_overrides(n_samples=401, solve_tol=1e-9, jobs=4)

        assert overridden.n_samples == 401
        assert overridden.tolerances.solve_tol == 1e-9
        assert overridden.tolerances.quad_tol == 1e-10
        assert overridden.jobs == 4

        # Original should be unchanged
        assert settings.n_samples == 2001
        assert settings.tolerances.solve_tol == 1e-8

    def test_overrides_are_validated(self):
        """An invalid override is rejected."""
        with pytest.raises(ValueError):
            SolverSettings().with_overrides(n_samples=400)


class TestRunConfig:
    """Tests for parameter consistency in RunConfig."""

    def test_physical_problem(self):
        """--a with --L gives a physical problem."""
        config = RunConfig(equation=EquationKind.KDV, a=1.0, length=3.0)
        assert config.is_physical
        assert config.problem() == PhysicalProblem(kind=EquationKind.KDV, a=1.0, length=3.0)

    def test_normalized_problem(self):
        """--b alone gives a normalized problem."""
        config = RunConfig(equation="mkdv-focusing", b=2.0)
        assert not config.is_physical
        assert config.problem() == NormalizedProblem(kind=EquationKind.MKDV_FOCUSING, b=2.0)

    @pytest.mark.parametrize(
        "parameters",
        [
            {"a": 1.0, "length": 3.0, "b": 2.0},
            {"a": 1.0},
            {"length": 3.0},
            {"a": 1.0, "b": 2.0},
            {},
        ],
    )
    def test_inconsistent_parameters(self, parameters):
        """Exactly one of (a with L) or b."""
        with pytest.raises(ValueError):
            RunConfig(equation=EquationKind.KDV, **parameters)

    def test_nonpositive_length(self):
        """L <= 0 fails when the problem is built."""
        config = RunConfig(equation=EquationKind.KDV, a=1.0, length=-2.0)
        with pytest.raises(ValueError):
            config.problem()

    def test_harmonic_index(self):
        """The harmonic index is at least 1."""
        with pytest.raises(ValueError):
            RunConfig(equation=EquationKind.KDV, b=1.0, harmonic=0)


class TestSettingsLoader:
    """Tests for settings loading and saving."""

    def test_write_and_load_settings(self):
        """Test writing and loading a settings file."""
        with tempfile.TemporaryDirectory() as tmpdir:
            settings_path = Path(tmpdir) / "settings.json"

            write_default_settings(settings_path)
            assert settings_path.exists()

            loaded = load_settings(settings_path)
            assert loaded == get_default_settings()

    def test_round_trip_custom_settings(self):
        """Custom values survive a write/load cycle."""
        settings = SolverSettings(n_samples=501, jobs=3, tolerances=Tolerances(ode_tol=1e-4))
        with tempfile.TemporaryDirectory() as tmpdir:
            settings_path = Path(tmpdir) / "custom.json"
            write_settings(settings, settings_path)
            assert load_settings(settings_path) == settings

    def test_load_nonexistent_file(self):
        """Test loading a nonexistent file."""
        with pytest.raises(FileNotFoundError):
            load_settings("/nonexistent/path/settings.json")

    def test_load_invalid_settings(self):
        """A file with an even sample count is rejected."""
        with tempfile.TemporaryDirectory() as tmpdir:
            settings_path = Path(tmpdir) / "bad.json"
            settings_path.write_text(json.dumps({"n_samples": 100}))
            with pytest.raises(ValueError):
                load_settings(settings_path)

    def test_bundled_defaults(self):
        """The bundled default.json matches the model defaults."""
        assert get_default_settings() == SolverSettings()

    def test_merge_with_none_settings(self):
        """Without a file the bundled defaults are the base."""
        merged = merge_settings_with_cli(None, quad_tol=1e-12)
        assert merged.tolerances.quad_tol == 1e-12
        assert merged.n_samples == 2001

    def test_cli_takes_precedence(self):
        """CLI options override file values; others are kept."""
        base = SolverSettings(n_samples=301, jobs=2)
        merged = merge_settings_with_cli(base, n_samples=401)
        assert merged.n_samples == 401
        assert merged.jobs == 2


class TestEnvironment:
    """Tests for KDV_STATIONARY_LOG_LEVEL."""

    def test_default_level(self, monkeypatch):
        """Unset means info."""
        monkeypatch.delenv(ENV_LOG_LEVEL, raising=False)
        assert log_level_from_environment() == logging.INFO

    def test_blank_is_unset(self, monkeypatch):
        """Whitespace-only values count as unset."""
        monkeypatch.setenv(ENV_LOG_LEVEL, "  ")
        assert get_env_or_none(ENV_LOG_LEVEL) is None

    @pytest.mark.parametrize("name", ["silent", "INFO", "Debug"])
    def test_named_levels(self, monkeypatch, name):
        """Level names are case-insensitive."""
        monkeypatch.setenv(ENV_LOG_LEVEL, name)
        assert log_level_from_environment() == LOG_LEVELS[name.lower()]

    def test_invalid_level(self, monkeypatch):
        """Unknown names are rejected."""
        monkeypatch.setenv(ENV_LOG_LEVEL, "loud")
        with pytest.raises(ValueError, match="loud"):
            log_level_from_environment()

    def test_configure_logging_replaces_handler(self, monkeypatch):
        """Repeated configuration keeps a single handler."""
        monkeypatch.setenv(ENV_LOG_LEVEL, "debug")
        configure_logging()
        logger = configure_logging()
        assert logger.name == PACKAGE_LOGGER
        tagged = [h for h in logger.handlers if getattr(h, "_kdv_stationary", False)]
        assert len(tagged) == 1
        assert logger.level == logging.DEBUG
        assert not logger.propagate
