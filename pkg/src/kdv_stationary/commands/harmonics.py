"""Harmonics command - solutions with fundamental period L/n."""

from ..config.schema import RunConfig
from ..errors import StationaryWaveError
from ..numerics.profile import ClassifiedAmplitude, classify, harmonic_family, physical_form
from .solve import emit_result, fail


def run_harmonics(config: RunConfig) -> None:
    """Build the n-th member of the harmonic family and emit it like a solve.

    A --b problem is read as a = b on [0, 2].

    Raises:
        SystemExit: 2 when the family does not exist, 3 on numerical failure,
            1 on a verification failure, 4 on I/O errors.
    """
    problem = physical_form(config.problem())
    settings = config.settings
    tolerances = settings.tolerances
    n = config.harmonic or 1

    try:
        profile, solution = harmonic_family(
            problem,
            n,
            n_samples=settings.n_samples,
            solve_tol=tolerances.solve_tol,
            quad_tol=tolerances.quad_tol,
        )
    except StationaryWaveError as e:
        fail(str(e), e.exit_code)

    if n == 1:
        amplitude = classify(problem, solution)
    else:
        amplitude = ClassifiedAmplitude(profile.classification, profile.y0)
    emit_result(profile, solution, amplitude, config)
