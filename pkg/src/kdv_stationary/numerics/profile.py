"""Solution curves: center-out RK4, physical rescaling, harmonic families."""

import logging
import math
from enum import Enum
from typing import Any, NamedTuple, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import (
    BoundaryMismatchError,
    IntegrationBlowupError,
    NoSolutionError,
    NonpositiveLengthError,
    ParameterMismatchError,
    UnsupportedKindError,
)
from .csolver import DEFAULT_SOLVE_TOL, NormalizedSolution, existence, solve_c
from .period_integral import DEFAULT_REL_TOL
from .potentials import (
    EquationKind,
    NormalizedProblem,
    potential_curvature,
    potential_derivative,
    turning_points,
)

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 2001
SUBSTEP_TARGET = 1e-3
MAX_SUBSTEPS = 1000
BLOWUP_FACTOR = 1e6
BOUNDARY_RESOLVE_THRESHOLD = 1e-5
RESOLVE_TIGHTENING = 1e-2


class Classification(str, Enum):
    HILL = "hill"
    HOLE = "hole"


class PhysicalProblem(BaseModel):
    """Stationary problem on [0, L] with u(0) = u(L) = u'(L) = 0."""

    model_config = ConfigDict(frozen=True)

    kind: EquationKind
    a: float
    length: float
    """Interval length L."""

    @field_validator("length")
    @classmethod
    def validate_length(cls, v: float) -> float:
        """Ensure L is positive and finite."""
        if not (math.isfinite(v) and v > 0):
            raise NonpositiveLengthError(f"interval length must be positive, got {v!r}")
        return v


Problem = Union[PhysicalProblem, NormalizedProblem]


class SolutionProfile(NamedTuple):
    """Sampled solution curve.

    For a normalized problem the samples are (x, y, y') on [-1, 1]; for a
    physical problem they are (X, u, u') on [0, L]. ``c`` is always the
    constant of the normalized equation (b = a L^2 / 4) that the samples
    satisfy, and ``y0`` is the sampled value at the arch center.
    """

    problem: Problem
    c: float
    y0: float
    x: np.ndarray
    y: np.ndarray
    yprime: np.ndarray
    fundamental_period: float
    classification: Classification
    harmonic: int = 1
    diagnostics: Optional[Any] = None

    @property
    def kind(self) -> EquationKind:
        return self.problem.kind

    @property
    def is_physical(self) -> bool:
        return isinstance(self.problem, PhysicalProblem)

    @property
    def b(self) -> float:
        if self.is_physical:
            return normalize(self.problem).b
        return self.problem.b

    @property
    def coefficient(self) -> float:
        """a for physical profiles, b for normalized ones."""
        return self.problem.a if self.is_physical else self.problem.b

    @property
    def domain_length(self) -> float:
        return self.problem.length if self.is_physical else 2.0


class ClassifiedAmplitude(NamedTuple):
    classification: Classification
    u0: float


def normalize(problem: PhysicalProblem) -> NormalizedProblem:
    """(kind, a, L) -> (kind, b = a L^2 / 4)."""
    if not problem.length > 0:
        raise NonpositiveLengthError(f"interval length must be positive, got {problem.length!r}")
    return NormalizedProblem(kind=problem.kind, b=problem.a * problem.length**2 / 4.0)


def physical_form(problem: Problem) -> PhysicalProblem:
    """A normalized problem read as a = b on an interval of length 2.

    Both amplitude scales are 1 at L = 2, so y0 and u0 coincide.
    """
    if isinstance(problem, PhysicalProblem):
        return problem
    return PhysicalProblem(kind=problem.kind, a=problem.b, length=2.0)


def amplitude_scale(kind: EquationKind, length: float) -> float:
    """u = scale * y: 4/L^2 for kdv, 2/L for both mKdV kinds."""
    if kind is EquationKind.KDV:
        return 4.0 / length**2
    return 2.0 / length


def _substeps(kind: EquationKind, b: float, y0: float, h: float) -> int:
    # |F''| on [0, y0] peaks at an end for every kind
    curvature = max(abs(potential_curvature(kind, b, 0.0)), abs(potential_curvature(kind, b, y0)))
    return min(MAX_SUBSTEPS, max(1, math.ceil(h * math.sqrt(curvature) / SUBSTEP_TARGET)))


def _integrate_from_center(
    kind: EquationKind,
    b: float,
    c: float,
    y0: float,
    steps: int,
    h: float,
    substeps: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Classical RK4 for y'' = -F'(y) from (y0, 0), sampled every h."""

    def force(y: float) -> float:
        return -potential_derivative(kind, b, c, y)

    dt = h / substeps
    bound = BLOWUP_FACTOR * max(1.0, abs(y0))
    y, v = y0, 0.0
    ys = [y]
    vs = [v]
    for step in range(steps):
        for _ in range(substeps):
            k1y, k1v = v, force(y)
            k2y, k2v = v + 0.5 * dt * k1v, force(y + 0.5 * dt * k1y)
            k3y, k3v = v + 0.5 * dt * k2v, force(y + 0.5 * dt * k2y)
            k4y, k4v = v + dt * k3v, force(y + dt * k3y)
            y += dt * (k1y + 2.0 * k2y + 2.0 * k3y + k4y) / 6.0
            v += dt * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        if not (math.isfinite(y) and math.isfinite(v)) or abs(y) > bound:
            raise IntegrationBlowupError(
                f"trajectory of {kind.value} b={b!r} c={c!r} blew up after {step + 1} steps"
            )
        ys.append(y)
        vs.append(v)
    return np.array(ys), np.array(vs)


def _classification(y0: float) -> Classification:
    return Classification.HILL if y0 > 0 else Classification.HOLE


def profile_normalized(
    kind: EquationKind,
    b: float,
    c: float,
    n_samples: int = DEFAULT_SAMPLES,
    periods: int = 1,
) -> SolutionProfile:
    """Sampled y on [-1, 1], integrated from the center and mirrored.

    With periods > 1 the trajectory continues through the zero turning
    points and the samples cover [-1, 2 periods - 1]; n_samples is the
    count for one period. Only the left half of the first arch is mirrored.

    Raises:
        ValueError: n_samples even or below 3, or periods below 1.
        InadmissibleParameterError: (b, c) not admissible.
        IntegrationBlowupError: the trajectory diverged.
    """
    if n_samples < 3 or n_samples % 2 == 0:
        raise ValueError(f"n_samples must be odd and at least 3, got {n_samples}")
    if periods < 1:
        raise ValueError(f"periods must be at least 1, got {periods}")

    y0 = turning_points(kind, b, c).y0
    half = (n_samples - 1) // 2
    steps = half + (periods - 1) * (n_samples - 1)
    x_run = np.linspace(0.0, 2.0 * periods - 1.0, steps + 1)
    h = 1.0 / half
    substeps = _substeps(kind, b, y0, h)
    logger.debug("RK4 %s b=%r c=%r: h=%r substeps=%d steps=%d", kind.value, b, c, h, substeps, steps)

    y_run, v_run = _integrate_from_center(kind, b, c, y0, steps, h, substeps)

    x = np.concatenate((-x_run[half:0:-1], x_run))
    y = np.concatenate((y_run[half:0:-1], y_run))
    yprime = np.concatenate((-v_run[half:0:-1], v_run))

    return SolutionProfile(
        problem=NormalizedProblem(kind=kind, b=b),
        c=c,
        y0=y0,
        x=x,
        y=y,
        yprime=yprime,
        fundamental_period=2.0,
        classification=_classification(y0),
    )


def rescale_to_physical(problem: PhysicalProblem, normalized: SolutionProfile) -> SolutionProfile:
    """Map samples on [-1, 1] to [0, L].

    kdv: u(X) = (4/L^2) y(2X/L - 1); mKdV: u(X) = (2/L) y(2X/L - 1).
    """
    if normalized.is_physical:
        raise ParameterMismatchError("profile is already in physical coordinates")
    expected = normalize(problem)
    if normalized.kind is not problem.kind:
        raise ParameterMismatchError(
            f"profile is for {normalized.kind.value}, problem is {problem.kind.value}"
        )
    if not math.isclose(normalized.problem.b, expected.b, rel_tol=1e-12, abs_tol=1e-300):
        raise ParameterMismatchError(
            f"profile has b={normalized.problem.b!r}, problem needs b={expected.b!r}"
        )

    length = problem.length
    scale = amplitude_scale(problem.kind, length)
    return normalized._replace(
        problem=problem,
        y0=scale * normalized.y0,
        x=(normalized.x + 1.0) * (length / 2.0),
        y=scale * normalized.y,
        yprime=(scale * 2.0 / length) * normalized.yprime,
        fundamental_period=normalized.fundamental_period * length / 2.0,
    )


def to_normalized(profile: SolutionProfile) -> SolutionProfile:
    """Inverse of rescale_to_physical; normalized profiles pass through."""
    if not profile.is_physical:
        return profile
    problem = profile.problem
    length = problem.length
    scale = amplitude_scale(problem.kind, length)
    return profile._replace(
        problem=normalize(problem),
        y0=profile.y0 / scale,
        x=profile.x * (2.0 / length) - 1.0,
        y=profile.y / scale,
        yprime=profile.yprime / (scale * 2.0 / length),
        fundamental_period=profile.fundamental_period * 2.0 / length,
    )


def _boundary_miss(profile: SolutionProfile) -> float:
    return max(abs(profile.y[0]), abs(profile.y[-1]))


def build_profile(
    problem: Problem,
    n_samples: int = DEFAULT_SAMPLES,
    solve_tol: float = DEFAULT_SOLVE_TOL,
    quad_tol: float = DEFAULT_REL_TOL,
) -> tuple[SolutionProfile, NormalizedSolution]:
    """Solve for c and sample the solution of a physical or normalized problem.

    A boundary miss above 1e-5 triggers one re-solve at 100x tighter
    tolerances before BoundaryMismatchError is raised.
    """
    normalized_problem = normalize(problem) if isinstance(problem, PhysicalProblem) else problem
    kind, b = normalized_problem.kind, normalized_problem.b

    solution = solve_c(kind, b, solve_tol, quad_tol)
    profile = profile_normalized(kind, b, solution.c, n_samples)
    if _boundary_miss(profile) > BOUNDARY_RESOLVE_THRESHOLD:
        logger.warning(
            "boundary miss %.2e for %s b=%r; re-solving at tighter tolerance",
            _boundary_miss(profile), kind.value, b,
        )
        solution = solve_c(kind, b, solve_tol * RESOLVE_TIGHTENING, quad_tol * RESOLVE_TIGHTENING)
        profile = profile_normalized(kind, b, solution.c, n_samples)
        if _boundary_miss(profile) > BOUNDARY_RESOLVE_THRESHOLD:
            raise BoundaryMismatchError(
                f"{kind.value} b={b!r}: profile misses the boundary by {_boundary_miss(profile):.2e}"
            )

    if isinstance(problem, PhysicalProblem):
        profile = rescale_to_physical(problem, profile)
    return profile, solution


def harmonic_family(
    problem: PhysicalProblem,
    n: int,
    n_samples: int = DEFAULT_SAMPLES,
    solve_tol: float = DEFAULT_SOLVE_TOL,
    quad_tol: float = DEFAULT_REL_TOL,
) -> tuple[SolutionProfile, NormalizedSolution]:
    """Solution with fundamental period L/n built from the base problem a/n^2.

    kdv: u(X) = n^2 u_{a/n^2, L}(nX); mkdv-focusing: u(X) = n u_{a/n^2, L}(nX).
    The base orbit is integrated once across all n periods with n_samples
    points per period, so every period boundary is an interior point of
    one trajectory.

    Raises:
        ValueError: n < 1.
        UnsupportedKindError: mkdv-defocusing with n >= 2.
        NoSolutionError: the base problem a/n^2 has no solution.
    """
    if n < 1:
        raise ValueError(f"harmonic index must be at least 1, got {n}")
    if n == 1:
        return build_profile(problem, n_samples, solve_tol, quad_tol)
    if problem.kind is EquationKind.MKDV_DEFOCUSING:
        raise UnsupportedKindError("harmonic families are not constructed for mkdv-defocusing")

    base_problem = PhysicalProblem(kind=problem.kind, a=problem.a / n**2, length=problem.length)
    base_b = normalize(base_problem).b
    if not existence(problem.kind, base_b):
        raise NoSolutionError(
            f"a L^2 = {problem.a * problem.length**2!r} violates the n={n} threshold 4 pi^2 n^2"
        )
    # solved with the boundary re-solve policy of a single period
    _, solution = build_profile(base_problem, n_samples, solve_tol, quad_tol)
    orbit = profile_normalized(problem.kind, base_b, solution.c, n_samples, periods=n)

    if problem.kind is EquationKind.KDV:
        factor, c_factor = float(n**2), float(n**4)
    else:
        factor, c_factor = float(n), float(n**3)

    length = problem.length
    scale = amplitude_scale(problem.kind, length)
    x = np.linspace(0.0, length, orbit.x.size)
    y = (factor * scale) * orbit.y
    yprime = (factor * n * scale * 2.0 / length) * orbit.yprime

    profile = SolutionProfile(
        problem=problem,
        c=c_factor * solution.c,
        y0=factor * (scale * orbit.y0),
        x=x,
        y=y,
        yprime=yprime,
        fundamental_period=length / n,
        classification=orbit.classification,
        harmonic=n,
    )
    return profile, solution


def classify(problem: PhysicalProblem, solution: NormalizedSolution) -> ClassifiedAmplitude:
    """Hill or hole, with the physical amplitude u0 at the center L/2.

    For kdv with a > 0 the amplitude is (-3a + sqrt(9a^2 + 384 c / L^4)) / 2,
    which equals 4 y0 / L^2.
    """
    a, length = problem.a, problem.length
    if problem.kind is EquationKind.KDV and a > 0:
        u0 = 0.5 * (-3.0 * a + math.sqrt(9.0 * a * a + 384.0 * solution.c / length**4))
    else:
        u0 = amplitude_scale(problem.kind, length) * solution.y0
    return ClassifiedAmplitude(_classification(u0), u0)
