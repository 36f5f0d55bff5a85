"""Solve command - one problem to a result document and profile file."""

from pathlib import Path
from typing import NoReturn, Optional

import click
from rich.console import Console
from rich.table import Table

from ..config.schema import RunConfig
from ..errors import StationaryWaveError
from ..numerics.csolver import NormalizedSolution
from ..numerics.profile import ClassifiedAmplitude, SolutionProfile, build_profile, classify, physical_form
from ..numerics.verify import verify_profile
from ..utils.export import (
    ResultDocument,
    attach_profile,
    build_document,
    document_text,
    write_document,
    write_plot_data,
    write_profile_csv,
)
from ..utils.paths import default_profile_path

console = Console()
error_console = Console(stderr=True)

EXIT_VERIFICATION_FAILED = 1
EXIT_IO_ERROR = 4


def fail(message: str, exit_code: int) -> NoReturn:
    """Print a message on stderr and exit with the given status."""
    error_console.print(f"[red]✗ {message}[/red]")
    raise SystemExit(exit_code)


def print_document_summary(document: ResultDocument, destination: Optional[Path]) -> None:
    table = Table(title=f"{document.equation.value} solution", show_header=True, header_style="bold")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value")

    if document.domain == "physical":
        table.add_row("a", repr(document.a))
        table.add_row("L", repr(document.length))
    table.add_row("b", repr(document.b))
    table.add_row("c", repr(document.c))
    table.add_row("y0", repr(document.y0))
    table.add_row("u0", repr(document.u0))
    table.add_row("classification", document.classification.value)
    table.add_row("fundamental period", repr(document.fundamental_period))
    if document.harmonic != 1:
        table.add_row("harmonic", str(document.harmonic))
    table.add_row("|I - 1|", f"{document.criterion_residual:.3e}")
    table.add_row("iterations", str(document.iterations))
    table.add_row("energy residual", f"{document.residuals.energy:.3e}")
    table.add_row("ODE residual", f"{document.residuals.ode3:.3e}")

    console.print(table)
    if destination is not None:
        console.print(f"[green]✓[/green] Result written to [cyan]{destination}[/cyan]")


def emit_result(
    profile: SolutionProfile,
    solution: NormalizedSolution,
    amplitude: ClassifiedAmplitude,
    config: RunConfig,
) -> None:
    """Verify, write the requested files and report.

    Without --out the document goes to stdout as JSON and no table is shown.

    Raises:
        SystemExit: 1 when a residual exceeds its tolerance, 4 on I/O errors.
    """
    settings = config.settings
    report = verify_profile(profile)
    document = build_document(
        profile, solution, amplitude, report, settings.tolerances, settings.n_samples
    )

    profile_path = config.profile_out
    if profile_path is None and config.out is not None:
        profile_path = default_profile_path(config.out)

    try:
        if profile_path is not None:
            write_profile_csv(profile, profile_path)
            if config.out is not None:
                document = attach_profile(document, profile_path, config.out)
            else:
                document = document.model_copy(update={"profile_path": Path(profile_path).as_posix()})
        if config.plot_data is not None:
            write_plot_data(profile.x, profile.y, config.plot_data, header="x u")
        if config.out is not None:
            write_document(document, config.out)
    except OSError as e:
        fail(f"Failed to write results: {e}", EXIT_IO_ERROR)

    if config.out is None:
        click.echo(document_text(document), nl=False)
    else:
        print_document_summary(document, config.out)

    violations = report.violations(settings.tolerances)
    if violations:
        for violation in violations:
            error_console.print(f"[red]✗ {violation}[/red]")
        raise SystemExit(EXIT_VERIFICATION_FAILED)


def run_solve(config: RunConfig) -> None:
    """Solve one problem and emit its result document.

    Raises:
        SystemExit: 2 when no solution exists, 3 on numerical failure,
            1 on a verification failure, 4 on I/O errors.
    """
    problem = config.problem()
    settings = config.settings
    tolerances = settings.tolerances

    try:
        profile, solution = build_profile(
            problem,
            n_samples=settings.n_samples,
            solve_tol=tolerances.solve_tol,
            quad_tol=tolerances.quad_tol,
        )
    except StationaryWaveError as e:
        fail(str(e), e.exit_code)

    amplitude = classify(physical_form(problem), solution)
    emit_result(profile, solution, amplitude, config)
