"""Half-period functional I(b, c) and the quadrature-inversion curve.

With y = y0 t the zero-energy half period becomes

    I(b, c) = sqrt(k) * int_0^1 dt / sqrt(t (1 - t) G(t)),   k = 3 (kdv), 6 (mkdv)

and t = sin^2(theta) removes both endpoint singularities:

    I(b, c) = 2 sqrt(k) * int_0^{pi/2} dtheta / sqrt(G(sin^2 theta)).
"""

import logging
import math
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import (
    DegenerateRadicandError,
    IntegralNonconvergenceError,
    NonpositiveRadicandError,
)
from .potentials import EquationKind, TurningPoints, turning_points

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-10
GAUSS_LEGENDRE_LADDER = tuple(16 * 2**k for k in range(9))  # 16 .. 4096
DEGENERACY_RATIO = 1e-12
INVERSION_PANELS = 2048
PANEL_ORDER = 8
HALF_PI = 0.5 * math.pi


class PeriodIntegralEstimate(NamedTuple):
    value: float
    order: int
    """Gauss-Legendre order of the accepted estimate."""
    last_change: float
    """|estimate(order) - estimate(order / 2)|"""


def scale_constant(kind: EquationKind) -> float:
    """k in the prefactor sqrt(k)."""
    return 3.0 if kind is EquationKind.KDV else 6.0


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [0, pi/2]."""
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return (nodes + 1.0) * (HALF_PI / 2.0), weights * (HALF_PI / 2.0)


def radicand(kind: EquationKind, b: float, points: TurningPoints, t):
    """G(t) in factored root form.

    kdv:        y0 t - y1
    focusing:   (y0 t - y1)(y0 t - y2) when y1, y2 are real,
                y0^2 (t^2 + t + 1) + 6b otherwise
    defocusing: (y0 t - y1)(y2 - y0 t) = 6b - y0^2 (1 + t + t^2)
    """
    y = points.y0 * t
    if kind is EquationKind.KDV:
        return y - points.others[0]
    if kind is EquationKind.MKDV_FOCUSING:
        if points.others:
            y1, y2 = points.others
            return (y - y1) * (y - y2)
        return y * y + points.y0 * y + points.y0**2 + 6.0 * b
    y1, y2 = points.others
    return (y - y1) * (y2 - y)


def _check_radicand(values: np.ndarray, kind: EquationKind, b: float, c: float) -> None:
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise NonpositiveRadicandError(
            f"radicand is not positive on [0, 1] for {kind.value} b={b!r} c={c!r}"
        )
    if values.min() < DEGENERACY_RATIO * values.max():
        raise DegenerateRadicandError(
            f"radicand nearly vanishes for {kind.value} b={b!r} c={c!r}; "
            "the period integral is close to diverging"
        )


def period_integral_estimate(
    kind: EquationKind,
    b: float,
    c: float,
    rel_tol: float = DEFAULT_REL_TOL,
) -> PeriodIntegralEstimate:
    """I(b, c) by Gauss-Legendre node doubling in the theta variable."""
    points = turning_points(kind, b, c)
    prefactor = 2.0 * math.sqrt(scale_constant(kind))

    ends = radicand(kind, b, points, np.array([0.0, 1.0]))
    _check_radicand(ends, kind, b, c)

    previous = None
    for order in GAUSS_LEGENDRE_LADDER:
        theta, weights = _gauss_legendre(order)
        g = radicand(kind, b, points, np.sin(theta) ** 2)
        _check_radicand(g, kind, b, c)
        estimate = prefactor * float(np.dot(weights, 1.0 / np.sqrt(g)))
        if previous is not None:
            change = abs(estimate - previous)
            if change <= rel_tol * abs(estimate):
                return PeriodIntegralEstimate(estimate, order, change)
        previous = estimate

    raise IntegralNonconvergenceError(
        f"period integral for {kind.value} b={b!r} c={c!r} did not reach "
        f"rel_tol={rel_tol!r} with {GAUSS_LEGENDRE_LADDER[-1]} nodes"
    )


def period_integral(
    kind: EquationKind,
    b: float,
    c: float,
    rel_tol: float = DEFAULT_REL_TOL,
) -> float:
    """I(b, c); the solvability criterion is I = 1."""
    return period_integral_estimate(kind, b, c, rel_tol).value


def boundary_anchored_curve(kind: EquationKind, b: float, c: float, x) -> np.ndarray:
    """y(x) on the falling half from x(y) = 1 - int_0^y ds / sqrt(-2F(s)).

    The curve is anchored at the boundary point x = 1, so it reaches the
    amplitude y0 at x = 1 - I(b, c); it coincides with the center-anchored
    solution only when I(b, c) = 1.
    """
    points = turning_points(kind, b, c)
    prefactor = 2.0 * math.sqrt(scale_constant(kind))

    edges = np.linspace(0.0, HALF_PI, INVERSION_PANELS + 1)
    nodes, weights = np.polynomial.legendre.leggauss(PANEL_ORDER)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    phi = mid[:, None] + half[:, None] * nodes[None, :]

    g = radicand(kind, b, points, np.sin(phi) ** 2)
    _check_radicand(g, kind, b, c)
    panels = prefactor * (half[:, None] * weights[None, :] / np.sqrt(g)).sum(axis=1)
    x_of_theta = 1.0 - np.concatenate(([0.0], np.cumsum(panels)))

    # x decreases in theta; the spline wants increasing abscissae
    theta_of_x = CubicSpline(x_of_theta[::-1], edges[::-1])
    theta = np.clip(theta_of_x(np.asarray(x, dtype=float)), 0.0, HALF_PI)
    return points.y0 * np.sin(theta) ** 2
