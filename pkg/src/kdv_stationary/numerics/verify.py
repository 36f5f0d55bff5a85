"""Residual checks for sampled solutions.

Every check reads only the stored samples (x, y, y') plus the equation
parameters, so a profile loaded back from disk is verified the same way as
one fresh from the integrator.
"""

import logging
import math
from typing import NamedTuple, Optional

import numpy as np

from ..errors import NonuniformGridError
from .period_integral import boundary_anchored_curve
from .potentials import EquationKind, potential_value
from .profile import SolutionProfile, profile_normalized, to_normalized

logger = logging.getLogger(__name__)

MIN_SAMPLES = 7
EDGE_EXCLUDED = 3
GRID_REL_TOL = 1e-9
SLOPE_NOISE = 1e-9
ARCH_LEVEL = 0.5


class BoundaryResidual(NamedTuple):
    left: float
    """|y| at the left end"""
    right: float
    """|y| at the right end"""
    right_slope: float
    """|y'| at the right end"""


class VerificationReport(NamedTuple):
    """All residuals of one profile, measured in the normalized domain."""

    energy: float
    ode3: float
    slope: float
    boundary: BoundaryResidual
    left_slope: float
    arches: int
    period_ok: bool

    def violations(self, tolerances) -> list[str]:
        """Human-readable list of failed checks; empty when everything passes."""
        failed = []
        if not self.energy <= tolerances.energy_tol:
            failed.append(f"energy residual {self.energy:.3e} > {tolerances.energy_tol:g}")
        if not self.ode3 <= tolerances.ode_tol:
            failed.append(f"third-order residual {self.ode3:.3e} > {tolerances.ode_tol:g}")
        if not self.slope <= tolerances.ode_tol:
            failed.append(f"slope residual {self.slope:.3e} > {tolerances.ode_tol:g}")
        for name, value in self.boundary._asdict().items():
            if not value <= tolerances.boundary_tol:
                failed.append(f"boundary {name} {value:.3e} > {tolerances.boundary_tol:g}")
        if not self.left_slope <= tolerances.boundary_tol:
            failed.append(f"boundary left_slope {self.left_slope:.3e} > {tolerances.boundary_tol:g}")
        if not self.period_ok:
            failed.append(f"{self.arches} arches do not match the stored fundamental period")
        return failed


def grid_step(x: np.ndarray) -> float:
    """Spacing of a uniform grid.

    Raises:
        ValueError: fewer than 7 samples.
        NonuniformGridError: spacing varies by more than 1e-9 relative.
    """
    x = np.asarray(x, dtype=float)
    if x.size < MIN_SAMPLES:
        raise ValueError(f"finite-difference residuals need at least {MIN_SAMPLES} samples, got {x.size}")
    h = (x[-1] - x[0]) / (x.size - 1)
    if not h > 0 or np.max(np.abs(np.diff(x) - h)) > GRID_REL_TOL * h:
        raise NonuniformGridError("sample grid is not uniform")
    return float(h)


def _first_difference(f: np.ndarray, h: float) -> np.ndarray:
    """4th-order centered f' at the interior indices 3..n-4."""
    lo2, lo1 = slice(1, f.size - 5), slice(2, f.size - 4)
    hi1, hi2 = slice(4, f.size - 2), slice(5, f.size - 1)
    return (-f[hi2] + 8.0 * f[hi1] - 8.0 * f[lo1] + f[lo2]) / (12.0 * h)


def _second_difference(f: np.ndarray, h: float) -> np.ndarray:
    """6th-order centered f'' at the interior indices 3..n-4."""
    lo3, lo2, lo1 = slice(0, f.size - 6), slice(1, f.size - 5), slice(2, f.size - 4)
    mid = slice(EDGE_EXCLUDED, f.size - EDGE_EXCLUDED)
    hi1, hi2, hi3 = slice(4, f.size - 2), slice(5, f.size - 1), slice(6, f.size)
    return (
        2.0 * (f[lo3] + f[hi3])
        - 27.0 * (f[lo2] + f[hi2])
        + 270.0 * (f[lo1] + f[hi1])
        - 490.0 * f[mid]
    ) / (180.0 * h * h)


def _interior(f: np.ndarray) -> np.ndarray:
    return f[EDGE_EXCLUDED:f.size - EDGE_EXCLUDED]


def nonlinear_factor(kind: EquationKind, y):
    """Coefficient of y' in the nonlinear term: y, y^2 or -y^2."""
    if kind is EquationKind.KDV:
        return y
    if kind is EquationKind.MKDV_FOCUSING:
        return y * y
    return -(y * y)


def energy_residual(
    profile: SolutionProfile,
    kind: Optional[EquationKind] = None,
    b: Optional[float] = None,
    c: Optional[float] = None,
) -> float:
    """max |y'^2 / 2 + F(y)| over the normalized samples."""
    normalized = to_normalized(profile)
    kind = normalized.kind if kind is None else kind
    b = normalized.problem.b if b is None else b
    c = normalized.c if c is None else c
    energy = 0.5 * normalized.yprime**2 + potential_value(kind, b, c, normalized.y)
    return float(np.max(np.abs(energy)))


def ode3_residual(
    profile: SolutionProfile,
    kind: Optional[EquationKind] = None,
    coefficient: Optional[float] = None,
) -> float:
    """max interior |y''' + coefficient y' + N(y) y'|.

    The coefficient is a for physical profiles and b for normalized ones.
    y''' is the second difference of the stored slope column.
    """
    kind = profile.kind if kind is None else kind
    coefficient = profile.coefficient if coefficient is None else coefficient
    h = grid_step(profile.x)
    slope = np.asarray(profile.yprime, dtype=float)
    y = _interior(np.asarray(profile.y, dtype=float))
    inner_slope = _interior(slope)
    residual = _second_difference(slope, h) + (coefficient + nonlinear_factor(kind, y)) * inner_slope
    return float(np.max(np.abs(residual)))


def slope_residual(profile: SolutionProfile) -> float:
    """max interior |D1(y) - y'| with the 4th-order first-derivative stencil."""
    h = grid_step(profile.x)
    y = np.asarray(profile.y, dtype=float)
    difference = _first_difference(y, h) - _interior(np.asarray(profile.yprime, dtype=float))
    return float(np.max(np.abs(difference)))


def boundary_residual(profile: SolutionProfile) -> BoundaryResidual:
    return BoundaryResidual(
        left=abs(float(profile.y[0])),
        right=abs(float(profile.y[-1])),
        right_slope=abs(float(profile.yprime[-1])),
    )


def left_slope_residual(profile: SolutionProfile) -> float:
    """|y'| at the left end, zero for a solution continued periodically."""
    return abs(float(profile.yprime[0]))


def count_arches(profile: SolutionProfile) -> int:
    """Number of slope sign changes inside the runs where |y| > max|y| / 2."""
    y = np.abs(np.asarray(profile.y, dtype=float))
    slope = np.asarray(profile.yprime, dtype=float)
    peak = float(y.max()) if y.size else 0.0
    if peak == 0.0:
        return 0

    noise = SLOPE_NOISE * float(np.max(np.abs(slope)))
    arches = 0
    previous_sign = 0
    for high, s in zip(y > ARCH_LEVEL * peak, slope):
        if not high:
            previous_sign = 0
            continue
        if abs(s) <= noise:
            continue
        sign = 1 if s > 0 else -1
        if previous_sign and sign != previous_sign:
            arches += 1
        previous_sign = sign
    return arches


def fundamental_period_check(profile: SolutionProfile) -> bool:
    """True when the arch count reproduces the stored fundamental period."""
    arches = count_arches(profile)
    if arches < 1:
        return False
    return math.isclose(profile.domain_length / arches, profile.fundamental_period, rel_tol=1e-9)


def cross_construction_check(
    kind: EquationKind,
    b: float,
    c: float,
    n_samples: int,
) -> float:
    """Sup distance between the integrated profile and the quadrature-inverted curve on [0, 1]."""
    profile = profile_normalized(kind, b, c, n_samples)
    falling = profile.x >= 0.0
    curve = boundary_anchored_curve(kind, b, c, profile.x[falling])
    distance = float(np.max(np.abs(curve - profile.y[falling])))
    logger.debug("cross construction %s b=%r c=%r: %.3e", kind.value, b, c, distance)
    return distance


def verify_profile(profile: SolutionProfile) -> VerificationReport:
    """Run every check on the normalized form of the profile."""
    normalized = to_normalized(profile)
    report = VerificationReport(
        energy=energy_residual(normalized),
        ode3=ode3_residual(normalized),
        slope=slope_residual(normalized),
        boundary=boundary_residual(normalized),
        left_slope=left_slope_residual(normalized),
        arches=count_arches(normalized),
        period_ok=fundamental_period_check(normalized),
    )
    logger.debug("verification %s: %r", profile.kind.value, report)
    return report
