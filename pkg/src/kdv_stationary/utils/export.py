"""Result documents, profile CSV files and plot data."""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..config.schema import Tolerances
from ..numerics.csolver import NormalizedSolution
from ..numerics.potentials import EquationKind, NormalizedProblem
from ..numerics.profile import (
    ClassifiedAmplitude,
    Classification,
    PhysicalProblem,
    SolutionProfile,
    amplitude_scale,
    to_normalized,
)
from ..numerics.verify import VerificationReport
from .paths import ensure_parent_directory, relative_to_document, resolve_from_document

FORMAT_VERSION = 1
PROFILE_HEADER = "x,u,u_prime"
PROFILE_FORMAT = "%.17g"


class Residuals(BaseModel):
    """Verification residuals as stored in a result document."""

    energy: float
    ode3: float
    slope: float
    boundary_left: float
    boundary_right: float
    boundary_right_slope: float
    boundary_left_slope: float
    arches: int
    period_ok: bool

    @classmethod
    def from_report(cls, report: VerificationReport) -> "Residuals":
        return cls(
            energy=report.energy,
            ode3=report.ode3,
            slope=report.slope,
            boundary_left=report.boundary.left,
            boundary_right=report.boundary.right,
            boundary_right_slope=report.boundary.right_slope,
            boundary_left_slope=report.left_slope,
            arches=report.arches,
            period_ok=report.period_ok,
        )


class ResultDocument(BaseModel):
    """One solved problem; the profile samples live in a companion CSV."""

    format_version: int = FORMAT_VERSION
    equation: EquationKind
    domain: Literal["physical", "normalized"]
    a: Optional[float] = None
    length: Optional[float] = None
    b: float
    c: float
    """Constant of the normalized equation the samples satisfy."""
    y0: float
    """Amplitude of the normalized solution."""
    u0: float
    classification: Classification
    fundamental_period: float
    harmonic: int = 1
    near_degenerate: bool = False
    criterion_residual: float
    """|I(b, c) - 1| of the (base) solve."""
    iterations: int
    function_calls: int
    n_samples: int
    tolerances: Tolerances
    residuals: Residuals
    passed: bool
    profile_path: Optional[str] = None
    generated_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    def problem(self):
        """PhysicalProblem or NormalizedProblem matching the stored samples."""
        if self.domain == "physical":
            return PhysicalProblem(kind=self.equation, a=self.a, length=self.length)
        return NormalizedProblem(kind=self.equation, b=self.b)


def build_document(
    profile: SolutionProfile,
    solution: NormalizedSolution,
    amplitude: ClassifiedAmplitude,
    report: VerificationReport,
    tolerances: Tolerances,
    n_samples: int,
) -> ResultDocument:
    physical = profile.is_physical
    return ResultDocument(
        equation=profile.kind,
        domain="physical" if physical else "normalized",
        a=profile.problem.a if physical else None,
        length=profile.problem.length if physical else None,
        b=profile.b,
        c=profile.c,
        y0=to_normalized(profile).y0,
        u0=amplitude.u0,
        classification=amplitude.classification,
        fundamental_period=profile.fundamental_period,
        harmonic=profile.harmonic,
        near_degenerate=solution.near_degenerate,
        criterion_residual=solution.residual,
        iterations=solution.iterations,
        function_calls=solution.function_calls,
        n_samples=n_samples,
        tolerances=tolerances,
        residuals=Residuals.from_report(report),
        passed=not report.violations(tolerances),
    )


def document_text(document: ResultDocument) -> str:
    """JSON text, one key per line, generated_at last."""
    return json.dumps(document.model_dump(mode="json"), indent=2) + "\n"


def write_document(document: ResultDocument, path: str | Path) -> None:
    path = ensure_parent_directory(path)
    path.write_text(document_text(document), encoding="utf-8")


def read_document(path: str | Path) -> ResultDocument:
    """Load a result document.

    Raises:
        FileNotFoundError: the file is missing.
        ValueError: the file is not a valid result document (json and
            pydantic errors are both ValueErrors).
    """
    text = Path(path).read_text(encoding="utf-8")
    return ResultDocument.model_validate_json(text)


def attach_profile(
    document: ResultDocument, profile_path: str | Path, document_path: str | Path
) -> ResultDocument:
    """Copy of the document pointing at profile_path, stored relative to it."""
    stored = relative_to_document(profile_path, document_path)
    return document.model_copy(update={"profile_path": stored})


def write_profile_csv(profile: SolutionProfile, path: str | Path) -> None:
    """x, u, u' with 17 significant digits, comma separated, LF line ends."""
    path = ensure_parent_directory(path)
    columns = np.column_stack((profile.x, profile.y, profile.yprime))
    np.savetxt(
        path,
        columns,
        fmt=PROFILE_FORMAT,
        delimiter=",",
        header=PROFILE_HEADER,
        comments="",
        newline="\n",
    )


def read_profile_csv(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Columns of a profile CSV.

    Raises:
        ValueError: wrong header or a malformed row.
    """
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        header = f.readline().strip()
    if header != PROFILE_HEADER:
        raise ValueError(f"{path}: expected header '{PROFILE_HEADER}', found '{header}'")
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 3:
        raise ValueError(f"{path}: expected 3 columns, found {data.shape[1]}")
    return data[:, 0], data[:, 1], data[:, 2]


def profile_from_document(document: ResultDocument, document_path: str | Path) -> SolutionProfile:
    """Rebuild the stored profile from a document and its CSV.

    Raises:
        ValueError: the document has no profile file, or the file is malformed.
        FileNotFoundError: the profile file is missing.
    """
    if document.profile_path is None:
        raise ValueError("result document does not reference a profile file")
    x, y, yprime = read_profile_csv(resolve_from_document(document.profile_path, document_path))
    problem = document.problem()
    y0 = document.y0
    if isinstance(problem, PhysicalProblem):
        y0 *= amplitude_scale(problem.kind, problem.length)
    return SolutionProfile(
        problem=problem,
        c=document.c,
        y0=y0,
        x=x,
        y=y,
        yprime=yprime,
        fundamental_period=document.fundamental_period,
        classification=document.classification,
        harmonic=document.harmonic,
    )


def write_plot_data(x, y, path: str | Path, header: str) -> None:
    """Two whitespace-separated columns for gnuplot-style tools."""
    path = ensure_parent_directory(path)
    np.savetxt(path, np.column_stack((x, y)), fmt=PROFILE_FORMAT, header=header, newline="\n")


class SweepRow(BaseModel):
    """One grid point of a sweep; failed points keep their status and no numbers."""

    value: float
    b: Optional[float] = None
    exists: bool
    status: str
    """ok, no-solution, or the failure class name."""
    c: Optional[float] = None
    y0: Optional[float] = None
    u0: Optional[float] = None
    classification: Optional[Classification] = None
    residuals: Optional[Residuals] = None
    iterations: Optional[int] = None


class SweepDocument(BaseModel):
    format_version: int = FORMAT_VERSION
    equation: EquationKind
    parameter: Literal["L", "a", "b"]
    fixed: dict[str, float]
    """The non-swept parameter(s), e.g. {"a": 1.0} for an L sweep."""
    n_samples: int
    tolerances: Tolerances
    rows: list[SweepRow]
    generated_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())


def sweep_text(document: SweepDocument) -> str:
    return json.dumps(document.model_dump(mode="json"), indent=2) + "\n"
