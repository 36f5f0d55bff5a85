"""Pydantic models for solver settings and run configuration."""

import math
from pathlib import Path
from typing import Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from ..numerics.potentials import EquationKind, NormalizedProblem
from ..numerics.profile import PhysicalProblem


class Tolerances(BaseModel):
    """Tolerances for the solve and for verification."""

    solve_tol: float = 1e-8
    """Accepted |I(b, c) - 1| at the solved constant."""
    quad_tol: float = 1e-10
    """Relative convergence of the period integral."""
    boundary_tol: float = 1e-6
    energy_tol: float = 1e-6
    ode_tol: float = 1e-5

    @field_validator("*")
    @classmethod
    def validate_positive(cls, v: float) -> float:
        """Every tolerance must be a positive finite number."""
        if not (math.isfinite(v) and v > 0):
            raise ValueError("tolerances must be positive")
        return v


class SolverSettings(BaseModel):
    """Numeric settings shared by every subcommand."""

    tolerances: Tolerances = Field(default_factory=Tolerances)
    n_samples: int = 2001
    """Samples on one fundamental period; odd so the center is a sample."""
    jobs: int = 1
    """Worker processes for sweeps."""

    @field_validator("n_samples")
    @classmethod
    def validate_n_samples(cls, v: int) -> int:
        """Odd and at least 7, so the residual stencils have interior points."""
        if v < 7 or v % 2 == 0:
            raise ValueError("n_samples must be odd and at least 7")
        return v

    @field_validator("jobs")
    @classmethod
    def validate_jobs(cls, v: int) -> int:
        if v < 1:
            raise ValueError("jobs must be at least 1")
        return v

    def with_overrides(
        self,
        n_samples: Optional[int] = None,
        solve_tol: Optional[float] = None,
        quad_tol: Optional[float] = None,
        jobs: Optional[int] = None,
    ) -> "SolverSettings":
        """Create new settings with CLI overrides applied."""
        data = self.model_dump()

        if n_samples is not None:
            data["n_samples"] = n_samples
        if solve_tol is not None:
            data["tolerances"]["solve_tol"] = solve_tol
        if quad_tol is not None:
            data["tolerances"]["quad_tol"] = quad_tol
        if jobs is not None:
            data["jobs"] = jobs

        return SolverSettings.model_validate(data)


class RunConfig(BaseModel):
    """One solve request: the equation, its parameters and where results go."""

    equation: EquationKind
    a: Optional[float] = None
    length: Optional[float] = None
    """Interval length L; required together with a."""
    b: Optional[float] = None
    """Normalized coefficient; excludes a and L."""
    settings: SolverSettings = Field(default_factory=SolverSettings)
    out: Optional[Path] = None
    profile_out: Optional[Path] = None
    plot_data: Optional[Path] = None
    harmonic: Optional[int] = None

    @field_validator("harmonic")
    @classmethod
    def validate_harmonic(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("harmonic index must be at least 1")
        return v

    @model_validator(mode="after")
    def validate_parameters(self) -> "RunConfig":
        """Exactly one of (a with L) or b."""
        physical = self.a is not None or self.length is not None
        if physical and self.b is not None:
            raise ValueError("give either --a with --L or --b, not both")
        if physical and (self.a is None or self.length is None):
            raise ValueError("--a and --L must be given together")
        if not physical and self.b is None:
            raise ValueError("give either --a with --L or --b")
        return self

    @property
    def is_physical(self) -> bool:
        return self.b is None

    def problem(self) -> Union[PhysicalProblem, NormalizedProblem]:
        """The problem this run targets."""
        if self.is_physical:
            return PhysicalProblem(kind=self.equation, a=self.a, length=self.length)
        return NormalizedProblem(kind=self.equation, b=self.b)
