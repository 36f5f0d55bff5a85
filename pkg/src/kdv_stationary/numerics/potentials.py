"""Potentials of the reduced second-order equations and their turning points.

Integrating the stationary third-order equation once gives y'' + F'(y) = 0 with

    kdv:              F(y) =  y^3/6  + b y^2/2 - c y
    mkdv-focusing:    F(y) =  y^4/12 + b y^2/2 - c y
    mkdv-defocusing:  F(y) = -y^4/12 + b y^2/2 - c y

F(y) = (sign) y F0(y) / m, where F0 is the quadratic (kdv) or cubic (mkdv)
factor whose nonzero root y0 is the amplitude of the solution arch.
"""

import logging
import math
from enum import Enum
from typing import NamedTuple

from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import DefocusingDiscriminantError, InadmissibleParameterError

logger = logging.getLogger(__name__)

SQRT2_OVER_3 = math.sqrt(2.0) / 3.0
NEWTON_POLISH_STEPS = 3


class EquationKind(str, Enum):
    """Which stationary equation is being solved."""

    KDV = "kdv"
    """u''' + a u' + u u' = 0"""

    MKDV_FOCUSING = "mkdv-focusing"
    """u''' + a u' + u^2 u' = 0"""

    MKDV_DEFOCUSING = "mkdv-defocusing"
    """u''' + a u' - u^2 u' = 0"""

    @property
    def is_mkdv(self) -> bool:
        return self is not EquationKind.KDV


class NormalizedProblem(BaseModel):
    """Problem on [-1, 1] after the substitution b = a L^2 / 4."""

    model_config = ConfigDict(frozen=True)

    kind: EquationKind
    b: float

    @field_validator("b")
    @classmethod
    def validate_b(cls, v: float) -> float:
        """Reject infinities and NaN."""
        if not math.isfinite(v):
            raise ValueError("b must be finite")
        return v


class TurningPoints(NamedTuple):
    """Real roots of F0 for one (kind, b, c)."""

    discriminant: float
    y0: float
    others: tuple[float, ...] = ()


class AdmissibleInterval(NamedTuple):
    """Open interval of admissible c, optionally with zero removed."""

    lower: float
    upper: float
    punctured: bool = False

    @property
    def is_empty(self) -> bool:
        return not self.lower < self.upper

    def contains(self, c: float) -> bool:
        if not self.lower < c < self.upper:
            return False
        return not (self.punctured and c == 0.0)

    def segments(self) -> list[tuple[float, float]]:
        """Connected pieces of the interval, in increasing order."""
        if self.is_empty:
            return []
        if self.punctured:
            return [(self.lower, 0.0), (0.0, self.upper)]
        return [(self.lower, self.upper)]


EMPTY_INTERVAL = AdmissibleInterval(0.0, 0.0)


def potential_value(kind: EquationKind, b: float, c: float, y):
    """F(y). Works elementwise on numpy arrays."""
    if kind is EquationKind.KDV:
        leading = y**3 / 6.0
    elif kind is EquationKind.MKDV_FOCUSING:
        leading = y**4 / 12.0
    else:
        leading = -(y**4) / 12.0
    return leading + b * y**2 / 2.0 - c * y


def potential_derivative(kind: EquationKind, b: float, c: float, y):
    """F'(y). Works elementwise on numpy arrays."""
    if kind is EquationKind.KDV:
        leading = y**2 / 2.0
    elif kind is EquationKind.MKDV_FOCUSING:
        leading = y**3 / 3.0
    else:
        leading = -(y**3) / 3.0
    return leading + b * y - c


def potential_curvature(kind: EquationKind, b: float, y):
    """F''(y)."""
    if kind is EquationKind.KDV:
        return y + b
    if kind is EquationKind.MKDV_FOCUSING:
        return y**2 + b
    return -(y**2) + b


def reduced_polynomial(kind: EquationKind, b: float, c: float, y):
    """F0(y), the factor of F left after dividing out y."""
    if kind is EquationKind.KDV:
        return y**2 + 3.0 * b * y - 6.0 * c
    if kind is EquationKind.MKDV_FOCUSING:
        return y**3 + 6.0 * b * y - 12.0 * c
    return y**3 - 6.0 * b * y + 12.0 * c


def reduced_polynomial_derivative(kind: EquationKind, b: float, y):
    if kind is EquationKind.KDV:
        return 2.0 * y + 3.0 * b
    if kind is EquationKind.MKDV_FOCUSING:
        return 3.0 * y**2 + 6.0 * b
    return 3.0 * y**2 - 6.0 * b


def discriminant(kind: EquationKind, b: float, c: float) -> float:
    """D: 9b^2+24c (kdv), 8b^3+36c^2 (focusing), -8b^3+36c^2 (defocusing)."""
    if kind is EquationKind.KDV:
        return 9.0 * b * b + 24.0 * c
    cube = 8.0 * b**3
    if kind is EquationKind.MKDV_DEFOCUSING:
        cube = -cube
    return cube + 36.0 * c * c


def defocusing_c_max(b: float) -> float:
    """Upper end (sqrt(2)/3) b^(3/2) of the defocusing interval, b > 0."""
    return SQRT2_OVER_3 * b * math.sqrt(b)


def admissible_c_interval(kind: EquationKind, b: float) -> AdmissibleInterval:
    """Values of c for which F has the sign pattern an arch needs.

    For both mKdV kinds only the positive representative is listed; c < 0
    follows from the symmetry y -> -y.
    """
    if kind is EquationKind.KDV:
        if b > 0:
            return AdmissibleInterval(-3.0 * b * b / 8.0, math.inf, punctured=True)
        return AdmissibleInterval(0.0, math.inf)
    if kind is EquationKind.MKDV_FOCUSING:
        return AdmissibleInterval(0.0, math.inf)
    if b > 0:
        return AdmissibleInterval(0.0, defocusing_c_max(b))
    return EMPTY_INTERVAL


def _polish(kind: EquationKind, b: float, c: float, root: float) -> float:
    """A few guarded Newton steps on F0 to remove formula roundoff."""
    value = reduced_polynomial(kind, b, c, root)
    for _ in range(NEWTON_POLISH_STEPS):
        if value == 0.0:
            break
        slope = reduced_polynomial_derivative(kind, b, root)
        if slope == 0.0:
            break
        step = value / slope
        # roundoff-sized corrections only; a larger step means a near-double root
        if not math.isfinite(step) or abs(step) > 1e-6 * max(1.0, abs(root)):
            break
        candidate = root - step
        candidate_value = reduced_polynomial(kind, b, c, candidate)
        if abs(candidate_value) >= abs(value):
            break
        root, value = candidate, candidate_value
    return root


def _kdv_roots(b: float, c: float, d: float) -> tuple[float, float]:
    sqrt_d = math.sqrt(d)
    # y0 * y1 = -6c; take the cancellation-free root first
    if b >= 0:
        y1 = -0.5 * (3.0 * b + sqrt_d)
        y0 = -6.0 * c / y1
    else:
        y0 = 0.5 * (-3.0 * b + sqrt_d)
        y1 = -6.0 * c / y0
    return y0, y1


def _focusing_roots(b: float, c: float, d: float) -> tuple[float, tuple[float, ...]]:
    if d > 0:
        sqrt_d = math.sqrt(d)
        p = math.cbrt(6.0 * c + sqrt_d)
        q = math.cbrt(6.0 * c - sqrt_d)
        if b > 0:
            # p q = -2b, so p + q = 12c / (p^2 - p q + q^2)
            y0 = 12.0 * c / (p * p + q * q + 2.0 * b)
        else:
            y0 = p + q
        return y0, ()
    radius = math.sqrt(8.0 * abs(b))
    angle = math.acos(min(1.0, 3.0 * c / math.sqrt(2.0 * abs(b) ** 3))) / 3.0
    y0 = radius * math.cos(angle)
    deep = radius * math.cos(angle - 4.0 * math.pi / 3.0)
    # y0 * y1 * y2 = 12c
    shallow = 12.0 * c / (y0 * deep)
    return y0, (deep, shallow)


def _defocusing_roots(b: float, c: float) -> tuple[float, tuple[float, ...]]:
    radius = math.sqrt(8.0 * b)
    alpha = math.acos(min(1.0, 3.0 * c / math.sqrt(2.0 * b**3))) / 3.0
    y1 = -radius * math.cos(alpha)
    y2 = radius * math.cos(math.pi / 3.0 - alpha)
    # y0 * y1 * y2 = -12c
    y0 = -12.0 * c / (y1 * y2)
    return y0, (y1, y2)


def turning_points(kind: EquationKind, b: float, c: float) -> TurningPoints:
    """Roots of F0 for admissible (b, c).

    Raises:
        DefocusingDiscriminantError: defocusing kind with D >= 0.
        InadmissibleParameterError: c outside admissible_c_interval(kind, b).
    """
    if kind.is_mkdv and c < 0:
        mirrored = turning_points(kind, b, -c)
        return TurningPoints(
            discriminant=mirrored.discriminant,
            y0=-mirrored.y0,
            others=tuple(-root for root in mirrored.others),
        )

    d = discriminant(kind, b, c)
    if kind is EquationKind.MKDV_DEFOCUSING and d >= 0:
        raise DefocusingDiscriminantError(
            f"mkdv-defocusing needs D < 0, got D={d!r} for b={b!r}, c={c!r}"
        )
    interval = admissible_c_interval(kind, b)
    if not interval.contains(c):
        raise InadmissibleParameterError(
            f"c={c!r} is not admissible for {kind.value} with b={b!r} "
            f"(interval {interval.lower!r}..{interval.upper!r})"
        )

    if kind is EquationKind.KDV:
        if d <= 0:
            raise InadmissibleParameterError(f"kdv needs D > 0, got D={d!r} for b={b!r}, c={c!r}")
        y0, y1 = _kdv_roots(b, c, d)
        others: tuple[float, ...] = (_polish(kind, b, c, y1),)
    elif kind is EquationKind.MKDV_FOCUSING:
        y0, raw = _focusing_roots(b, c, d)
        others = tuple(sorted(_polish(kind, b, c, r) for r in raw))
    else:
        y0, raw = _defocusing_roots(b, c)
        others = tuple(_polish(kind, b, c, r) for r in raw)

    y0 = _polish(kind, b, c, y0)
    if potential_derivative(kind, b, c, y0) == 0.0:
        raise InadmissibleParameterError(f"F'(y0) vanishes for b={b!r}, c={c!r}")

    logger.debug("turning points %s b=%r c=%r: D=%r y0=%r others=%r", kind.value, b, c, d, y0, others)
    return TurningPoints(discriminant=d, y0=y0, others=others)
