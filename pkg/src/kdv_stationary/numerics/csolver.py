"""Existence thresholds and the scalar solve I(b, c) = 1 for the constant c."""

import logging
import math
from typing import Callable, NamedTuple

from scipy.optimize import root_scalar

from ..errors import (
    BracketError,
    IntegralNonconvergenceError,
    NonpositiveRadicandError,
    NoSolutionError,
    SolveConvergenceError,
)
from .period_integral import DEFAULT_REL_TOL, period_integral
from .potentials import EquationKind, admissible_c_interval, turning_points

logger = logging.getLogger(__name__)

PI_SQUARED = math.pi**2
DEFAULT_SOLVE_TOL = 1e-8
MAX_EXPANSIONS = 200
ENDPOINT_MARGIN = 1e-9
BRACKET_WIDTH = 1e-14
NEAR_THRESHOLD = 1e-6


class NormalizedSolution(NamedTuple):
    """Solved constant c for the normalized problem."""

    kind: EquationKind
    b: float
    c: float
    y0: float
    residual: float
    """|I(b, c) - 1| at the returned c."""
    iterations: int
    function_calls: int
    near_degenerate: bool = False


def existence(kind: EquationKind, b: float) -> bool:
    """Nontrivial solutions exist iff kdv: b != pi^2, focusing: b < pi^2, defocusing: b > pi^2."""
    if kind is EquationKind.KDV:
        return b != PI_SQUARED
    if kind is EquationKind.MKDV_FOCUSING:
        return b < PI_SQUARED
    return b > PI_SQUARED


def solution_segment(kind: EquationKind, b: float) -> tuple[float, float]:
    """Piece of the admissible interval that contains the solution."""
    segments = admissible_c_interval(kind, b).segments()
    if kind is EquationKind.KDV and b > 0:
        # lim_{c -> 0} I = pi / sqrt(b): a hill above the threshold value 1, a hole below
        return segments[1] if math.pi / math.sqrt(b) > 1.0 else segments[0]
    return segments[-1]


def _anchor(b: float, lower: float, upper: float) -> float:
    if math.isinf(upper):
        return lower + max(1e-6, abs(b) * 1e-3)
    return 0.5 * (lower + upper)


def _toward(anchor: float, end: float, step: int) -> float:
    """Step-th point of the geometric ladder from anchor toward end."""
    if math.isinf(end):
        return anchor * 2.0**step
    point = end + (anchor - end) * 2.0**-step
    if end != 0.0:
        margin = ENDPOINT_MARGIN * max(1.0, abs(end))
        if abs(point - end) < margin:
            point = end + math.copysign(margin, anchor - end)
    return point


def bracket_solution(
    criterion: Callable[[float], float],
    lower: float,
    upper: float,
    increasing: bool,
    b: float,
) -> tuple[float, float, int]:
    """Bracket the sign change of criterion on (lower, upper).

    Returns:
        (low, high, evaluations) with criterion(low), criterion(high) of opposite signs.
    """
    anchor = _anchor(b, lower, upper)
    anchor_value = criterion(anchor)
    evaluations = 1

    # positive criterion means I > 1; move to where I is smaller, and vice versa
    if (anchor_value > 0) != increasing:
        end = upper
    else:
        end = lower

    previous = anchor
    for step in range(1, MAX_EXPANSIONS + 1):
        point = _toward(anchor, end, step)
        if point == previous:
            break
        value = criterion(point)
        evaluations += 1
        logger.debug("bracket step %d: c=%r I-1=%r", step, point, value)
        if (value > 0) != (anchor_value > 0):
            low, high = sorted((previous, point))
            return low, high, evaluations
        previous = point

    raise BracketError(
        f"no sign change of I(b, c) - 1 between {anchor!r} and {end!r} for b={b!r}"
    )


def solve_c(
    kind: EquationKind,
    b: float,
    tol: float = DEFAULT_SOLVE_TOL,
    quad_tol: float = DEFAULT_REL_TOL,
) -> NormalizedSolution:
    """The unique c in the admissible interval with I(b, c) = 1.

    Raises:
        NoSolutionError: existence(kind, b) is false.
        BracketError: the expansion ladder found no sign change.
        SolveConvergenceError: |I - 1| > tol at the converged c.
    """
    if not existence(kind, b):
        raise NoSolutionError(f"no nontrivial solution of {kind.value} exists for b={b!r}")

    lower, upper = solution_segment(kind, b)
    increasing = kind is EquationKind.MKDV_DEFOCUSING

    def criterion(c: float) -> float:
        return period_integral(kind, b, c, quad_tol) - 1.0

    try:
        low, high, evaluations = bracket_solution(criterion, lower, upper, increasing, b)
        result = root_scalar(
            criterion,
            bracket=(low, high),
            method="brentq",
            xtol=BRACKET_WIDTH * max(1.0, abs(low), abs(high)),
            maxiter=MAX_EXPANSIONS,
        )
    except (IntegralNonconvergenceError, NonpositiveRadicandError) as exc:
        raise BracketError(f"period integral failed while solving {kind.value} b={b!r}: {exc}") from exc

    c = float(result.root)
    residual = abs(criterion(c))
    if not result.converged or residual > tol:
        raise SolveConvergenceError(
            f"{kind.value} b={b!r}: |I - 1| = {residual!r} exceeds tol={tol!r} at c={c!r}"
        )

    y0 = turning_points(kind, b, c).y0
    near = abs(b - PI_SQUARED) < NEAR_THRESHOLD
    if near:
        logger.warning("b=%r is within %g of pi^2; the amplitude is close to zero", b, NEAR_THRESHOLD)
    logger.info("solved %s b=%r: c=%r y0=%r |I-1|=%.2e", kind.value, b, c, y0, residual)

    return NormalizedSolution(
        kind=kind,
        b=b,
        c=c,
        y0=y0,
        residual=residual,
        iterations=result.iterations,
        function_calls=evaluations + result.function_calls + 1,
        near_degenerate=near,
    )
