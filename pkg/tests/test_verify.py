"""Tests for the residual checks."""

import numpy as np
import pytest

from kdv_stationary.config.schema import Tolerances
from kdv_stationary.errors import NonuniformGridError
from kdv_stationary.numerics.csolver import PI_SQUARED, existence, solve_c
from kdv_stationary.numerics.potentials import EquationKind, NormalizedProblem
from kdv_stationary.numerics.profile import (
    Classification,
    PhysicalProblem,
    SolutionProfile,
    build_profile,
    harmonic_family,
    rescale_to_physical,
    to_normalized,
)
from kdv_stationary.numerics.verify import (
    BoundaryResidual,
    VerificationReport,
    boundary_residual,
    count_arches,
    cross_construction_check,
    energy_residual,
    fundamental_period_check,
    grid_step,
    ode3_residual,
    slope_residual,
    verify_profile,
)

KDV = EquationKind.KDV
FOCUSING = EquationKind.MKDV_FOCUSING
DEFOCUSING = EquationKind.MKDV_DEFOCUSING

SAMPLES = 1001

B_GRID = [-10.0, -1.0, 0.0, 1.0, 4.0, 9.0, PI_SQUARED - 1e-3, PI_SQUARED + 1e-3, 16.0, 25.0, 100.0]
SOLVABLE = [(kind, b) for kind in EquationKind for b in B_GRID if existence(kind, b)]


@pytest.fixture(scope="module")
def kdv_zero():
    return build_profile(NormalizedProblem(kind=KDV, b=0.0), n_samples=SAMPLES)[0]


def synthetic_profile(kind, b, samples=201):
    """A smooth arch that is not a solution: y = 1 + cos(pi x)."""
    x = np.linspace(-1.0, 1.0, samples)
    return SolutionProfile(
        problem=NormalizedProblem(kind=kind, b=b),
        c=0.0,
        y0=2.0,
        x=x,
        y=1.0 + np.cos(np.pi * x),
        yprime=-np.pi * np.sin(np.pi * x),
        fundamental_period=2.0,
        classification=Classification.HILL,
    )


class TestSolvedProfiles:
    """Solutions produced by build_profile pass every check."""

    @pytest.mark.parametrize(
        "problem",
        [
            NormalizedProblem(kind=KDV, b=0.0),
            NormalizedProblem(kind=KDV, b=16.0),
            NormalizedProblem(kind=FOCUSING, b=1.0),
            NormalizedProblem(kind=DEFOCUSING, b=12.0),
            PhysicalProblem(kind=KDV, a=1.0, length=3.0),
            PhysicalProblem(kind=FOCUSING, a=0.5, length=2.5),
        ],
    )
    def test_no_violations(self, problem):
        """Every residual stays within the default tolerances."""
        profile, _ = build_profile(problem, n_samples=SAMPLES)
        report = verify_profile(profile)
        assert report.violations(Tolerances()) == []
        assert report.arches == 1
        assert report.period_ok

    def test_harmonic_arches(self):
        """The third focusing harmonic has three arches and passes."""
        profile, _ = harmonic_family(PhysicalProblem(kind=FOCUSING, a=1.0, length=2.0), 3, n_samples=2001)
        report = verify_profile(profile)
        assert count_arches(profile) == 3
        assert report.arches == 3
        assert report.period_ok
        assert report.violations(Tolerances()) == []

    def test_second_kdv_harmonic(self):
        """kdv a = 0, L = 2, n = 2 verifies with two arches."""
        profile, _ = harmonic_family(PhysicalProblem(kind=KDV, a=0.0, length=2.0), 2, n_samples=2001)
        report = verify_profile(profile)
        assert report.arches == 2
        assert report.violations(Tolerances()) == []


class TestExistenceGrid:
    """Every solvable grid point verifies at the default sample count."""

    def test_grid_covers_each_kind(self):
        """kdv solves the whole grid, mKdV one side of pi^2 each."""
        counts = {kind: sum(1 for k, _ in SOLVABLE if k is kind) for kind in EquationKind}
        assert counts == {KDV: 11, FOCUSING: 7, DEFOCUSING: 4}

    @pytest.mark.parametrize("kind,b", SOLVABLE)
    def test_default_samples(self, kind, b):
        """Energy, third-order, slope and boundary residuals all pass with 2001 samples."""
        profile, _ = build_profile(NormalizedProblem(kind=kind, b=b))
        report = verify_profile(profile)
        assert report.violations(Tolerances()) == []
        assert report.ode3 <= 1e-5

    def test_steep_hole(self):
        """kdv b = 100 stays well inside the third-order tolerance."""
        profile, _ = build_profile(NormalizedProblem(kind=KDV, b=100.0))
        assert ode3_residual(profile) <= 2e-6


class TestHarmonicResiduals:
    """Harmonics of a nontrivial (a, L) are smooth across period boundaries."""

    # the normalized third-order residual of a harmonic is n^5 (kdv) or n^4 (mkdv) times the base one
    CASES = [(KDV, 2, 5), (KDV, 3, 5), (FOCUSING, 2, 4), (FOCUSING, 3, 4)]

    @pytest.mark.parametrize("kind,n", [(kind, n) for kind, n, _ in CASES])
    def test_default_samples(self, kind, n):
        """a = 1, L = 3 passes with period L/n."""
        profile, _ = harmonic_family(PhysicalProblem(kind=kind, a=1.0, length=3.0), n)
        report = verify_profile(profile)
        assert report.violations(Tolerances()) == []
        assert report.arches == n
        assert profile.fundamental_period == pytest.approx(3.0 / n)

    @pytest.mark.parametrize("n_samples", [1001, 2001])
    @pytest.mark.parametrize("kind,n,power", CASES)
    def test_residual_tracks_base(self, kind, n, power, n_samples):
        """Refining the grid keeps the harmonic at the scaled level of its base."""
        harmonic, _ = harmonic_family(PhysicalProblem(kind=kind, a=1.0, length=3.0), n, n_samples=n_samples)
        base, _ = build_profile(PhysicalProblem(kind=kind, a=1.0 / n**2, length=3.0), n_samples=n_samples)
        harmonic_ode3 = ode3_residual(to_normalized(harmonic))
        base_ode3 = ode3_residual(to_normalized(base))
        assert harmonic_ode3 <= 4.0 * n**power * base_ode3


class TestResidualsDetectDefects:
    """Each check reacts to the defect it is meant for."""

    def test_zero_profile(self):
        """The trivial profile has zero residuals, no arch and fails the period check."""
        x = np.linspace(-1.0, 1.0, 21)
        zero = SolutionProfile(
            problem=NormalizedProblem(kind=KDV, b=1.0),
            c=0.0,
            y0=0.0,
            x=x,
            y=np.zeros_like(x),
            yprime=np.zeros_like(x),
            fundamental_period=2.0,
            classification=Classification.HILL,
        )
        assert energy_residual(zero) == 0.0
        assert ode3_residual(zero) == 0.0
        assert slope_residual(zero) == 0.0
        assert boundary_residual(zero) == BoundaryResidual(0.0, 0.0, 0.0)
        assert count_arches(zero) == 0
        assert not fundamental_period_check(zero)
        assert "0 arches" in verify_profile(zero).violations(Tolerances())[-1]

    def test_perturbed_sample(self, kdv_zero):
        """Moving one sample by 1e-3 shows up in the energy and slope residuals."""
        y = kdv_zero.y.copy()
        y[SAMPLES // 4] += 1e-3
        perturbed = kdv_zero._replace(y=y)
        assert energy_residual(perturbed) > 1e-3
        assert slope_residual(perturbed) > 1e-2
        assert energy_residual(kdv_zero) < 1e-6

    def test_wrong_constant(self, kdv_zero):
        """The energy check is sensitive to c."""
        assert energy_residual(kdv_zero, c=1.01 * kdv_zero.c) > 1e-3

    def test_truncated_profile(self, kdv_zero):
        """Dropping the last samples leaves a nonzero right end."""
        cut = slice(0, SAMPLES - 50)
        truncated = kdv_zero._replace(x=kdv_zero.x[cut], y=kdv_zero.y[cut], yprime=kdv_zero.yprime[cut])
        boundary = boundary_residual(truncated)
        assert boundary.left <= 1e-6
        assert boundary.right > 1e-3
        assert boundary.right_slope > 1e-3

    def test_synthetic_arch_fails_ode(self):
        """A cosine arch is not a kdv solution."""
        profile = synthetic_profile(KDV, 1.0)
        assert ode3_residual(profile) > 1.0
        assert slope_residual(profile) < 1e-5


class TestGrid:
    """Grid requirements of the finite-difference stencils."""

    def test_uniform_step(self):
        """grid_step returns the spacing."""
        assert grid_step(np.linspace(0.0, 1.0, 11)) == pytest.approx(0.1)

    def test_nonuniform_grid(self, kdv_zero):
        """A moved abscissa is rejected."""
        x = kdv_zero.x.copy()
        x[10] += 1e-4
        with pytest.raises(NonuniformGridError):
            ode3_residual(kdv_zero._replace(x=x))

    def test_too_few_samples(self):
        """Fewer than 7 samples cannot be checked."""
        with pytest.raises(ValueError):
            grid_step(np.linspace(0.0, 1.0, 6))


class TestCrossConstruction:
    """Integrated profile against the quadrature-inverted curve."""

    @pytest.mark.parametrize(
        "kind,b",
        [
            (KDV, 0.0),
            (KDV, 4.0),
            (KDV, 16.0),
            (FOCUSING, -4.0),
            (FOCUSING, 0.0),
            (FOCUSING, 1.0),
            (FOCUSING, 4.0),
            (DEFOCUSING, 12.0),
            (DEFOCUSING, 4.0 * PI_SQUARED),
        ],
    )
    def test_solved_constant_agrees(self, kind, b):
        """At the solved c both constructions agree to 1e-6."""
        c = solve_c(kind, b).c
        assert cross_construction_check(kind, b, c, 2001) <= 1e-6

    def test_perturbed_constant_disagrees(self):
        """A c off by 1% separates the curves."""
        c = solve_c(KDV, 0.0).c
        assert cross_construction_check(KDV, 0.0, 1.01 * c, SAMPLES) > 1e-3


class TestScaleChain:
    """Physical third-order residuals scale by (amplitude scale) (2/L)^3."""

    @pytest.mark.parametrize("kind,ratio", [(KDV, 1.0 / 32.0), (FOCUSING, 1.0 / 16.0)])
    def test_ratio_at_length_four(self, kind, ratio):
        """On L = 4 the physical residual is 1/32 (kdv) or 1/16 (mkdv) of the normalized one."""
        normalized = synthetic_profile(kind, 1.0)
        physical = rescale_to_physical(PhysicalProblem(kind=kind, a=0.25, length=4.0), normalized)
        assert ode3_residual(physical) / ode3_residual(normalized) == pytest.approx(ratio, rel=1e-9)


class TestViolations:
    """Tests for VerificationReport.violations."""

    def test_lists_each_failure(self):
        """Every failing quantity produces one message."""
        report = VerificationReport(
            energy=1.0,
            ode3=1.0,
            slope=0.0,
            boundary=BoundaryResidual(0.0, 1.0, 0.0),
            left_slope=1.0,
            arches=1,
            period_ok=True,
        )
        failed = report.violations(Tolerances())
        assert len(failed) == 4
        assert failed[0].startswith("energy residual")
        assert any("boundary right" in message for message in failed)
        assert any("left_slope" in message for message in failed)

    def test_tolerances_are_respected(self):
        """Loose tolerances turn failures into passes."""
        report = VerificationReport(
            energy=1e-4,
            ode3=1e-4,
            slope=1e-4,
            boundary=BoundaryResidual(1e-4, 1e-4, 1e-4),
            left_slope=1e-4,
            arches=1,
            period_ok=True,
        )
        assert len(report.violations(Tolerances())) == 7
        loose = Tolerances(energy_tol=1e-3, ode_tol=1e-3, boundary_tol=1e-3)
        assert report.violations(loose) == []
