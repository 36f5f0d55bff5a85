"""Verify command - recompute residuals from a stored result document."""

from pathlib import Path

from rich.console import Console
from rich.table import Table

from ..errors import NonuniformGridError
from ..numerics.verify import VerificationReport, verify_profile
from ..utils.export import ResultDocument, profile_from_document, read_document
from .solve import EXIT_IO_ERROR, EXIT_VERIFICATION_FAILED, fail

console = Console()


def print_residual_table(report: VerificationReport, document: ResultDocument) -> None:
    tolerances = document.tolerances
    table = Table(title="Verification", show_header=True, header_style="bold")
    table.add_column("Check", style="cyan")
    table.add_column("Value")
    table.add_column("Tolerance")
    table.add_column("Status")

    def mark(ok: bool) -> str:
        return "[green]✓[/green]" if ok else "[red]✗[/red]"

    rows = [
        ("energy", report.energy, tolerances.energy_tol),
        ("third-order ODE", report.ode3, tolerances.ode_tol),
        ("slope", report.slope, tolerances.ode_tol),
        ("boundary left", report.boundary.left, tolerances.boundary_tol),
        ("boundary right", report.boundary.right, tolerances.boundary_tol),
        ("boundary right slope", report.boundary.right_slope, tolerances.boundary_tol),
        ("boundary left slope", report.left_slope, tolerances.boundary_tol),
    ]
    for name, value, tolerance in rows:
        table.add_row(name, f"{value:.3e}", f"{tolerance:g}", mark(value <= tolerance))
    table.add_row("arches", str(report.arches), str(document.harmonic), mark(report.period_ok))

    console.print(table)


def run_verify(document_path: Path) -> None:
    """Re-run every check on the samples a result document points to.

    Raises:
        SystemExit: 4 when the document or its profile cannot be read,
            1 when a residual exceeds the stored tolerance.
    """
    try:
        document = read_document(document_path)
        profile = profile_from_document(document, document_path)
    except (OSError, ValueError) as e:
        fail(f"Failed to read {document_path}: {e}", EXIT_IO_ERROR)

    try:
        report = verify_profile(profile)
    except NonuniformGridError as e:
        fail(f"Stored samples are not on a uniform grid: {e}", EXIT_VERIFICATION_FAILED)
    except ValueError as e:
        fail(f"Stored profile is unusable: {e}", EXIT_IO_ERROR)

    print_residual_table(report, document)

    violations = report.violations(document.tolerances)
    if violations:
        for violation in violations:
            console.print(f"  • {violation}")
        fail("verification failed", EXIT_VERIFICATION_FAILED)

    console.print("[green]✓ All residuals within tolerance[/green]")
