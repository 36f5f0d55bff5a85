"""Exception hierarchy shared by the numerics and the CLI.

Each class carries the process exit code the CLI reports for it.
"""


class StationaryWaveError(Exception):
    """Base class for every failure raised by kdv_stationary."""

    exit_code: int = 3


class InadmissibleParameterError(StationaryWaveError, ValueError):
    """The constant c (or the pair (b, c)) lies outside the admissible interval."""


class DefocusingDiscriminantError(InadmissibleParameterError):
    """Defocusing mKdV requires a negative discriminant (three distinct real roots)."""


class NonpositiveLengthError(InadmissibleParameterError):
    """Interval length must be positive."""


class NonpositiveRadicandError(StationaryWaveError):
    """The radicand factor of the period integral is not positive on [0, 1]."""


class IntegralNonconvergenceError(StationaryWaveError):
    """The Gauss-Legendre ladder did not reach the requested tolerance."""


class DegenerateRadicandError(IntegralNonconvergenceError):
    """The radicand nearly vanishes on the grid; the integral is close to diverging."""


class NoSolutionError(StationaryWaveError):
    """No nontrivial solution exists for the requested parameters."""

    exit_code = 2


class UnsupportedKindError(StationaryWaveError):
    """The requested construction is not available for this equation kind."""

    exit_code = 2


class BracketError(StationaryWaveError):
    """The expansion ladder produced no sign change of I(b, c) - 1."""


class SolveConvergenceError(StationaryWaveError):
    """The root finder stopped with |I(b, c) - 1| above the solve tolerance."""


class IntegrationBlowupError(StationaryWaveError):
    """The RK4 trajectory left every reasonable bound."""


class BoundaryMismatchError(StationaryWaveError):
    """The integrated profile misses the boundary even after a tighter re-solve."""


class ParameterMismatchError(StationaryWaveError, ValueError):
    """A normalized profile does not belong to the physical problem it is rescaled to."""


class NonuniformGridError(StationaryWaveError, ValueError):
    """Finite-difference residuals need a uniform sample grid."""
