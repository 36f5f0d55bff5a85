"""Sweep command - solve along a one-parameter grid of L, a or b."""

from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import NamedTuple, Optional

import numpy as np
from rich.console import Console
from rich.table import Table

from ..config.schema import SolverSettings
from ..errors import StationaryWaveError
from ..numerics.csolver import existence
from ..numerics.potentials import EquationKind, NormalizedProblem
from ..numerics.profile import PhysicalProblem, build_profile, classify, normalize, physical_form
from ..numerics.verify import verify_profile
from ..utils.export import Residuals, SweepDocument, SweepRow, sweep_text, write_plot_data
from ..utils.paths import ensure_parent_directory
from .solve import EXIT_IO_ERROR, fail

console = Console()

EXIT_ALL_FAILED = 3
STATUS_OK = "ok"
STATUS_NO_SOLUTION = "no-solution"


class SweepTask(NamedTuple):
    """Everything one worker needs; picklable for the process pool."""

    equation: EquationKind
    parameter: str
    value: float
    a: Optional[float]
    length: Optional[float]
    settings: SolverSettings


def sweep_grid(start: float, stop: float, count: int) -> np.ndarray:
    if count < 2:
        raise ValueError("a sweep needs at least 2 points")
    return np.linspace(start, stop, count)


def task_problem(task: SweepTask):
    if task.parameter == "b":
        return NormalizedProblem(kind=task.equation, b=task.value)
    if task.parameter == "L":
        return PhysicalProblem(kind=task.equation, a=task.a, length=task.value)
    return PhysicalProblem(kind=task.equation, a=task.value, length=task.length)


def sweep_point(task: SweepTask) -> SweepRow:
    """Solve one grid point; failures become row statuses, never exceptions."""
    try:
        problem = task_problem(task)
    except ValueError as e:
        return SweepRow(value=task.value, exists=False, status=type(e).__name__)

    b = problem.b if isinstance(problem, NormalizedProblem) else normalize(problem).b
    if not existence(task.equation, b):
        return SweepRow(value=task.value, b=b, exists=False, status=STATUS_NO_SOLUTION)

    tolerances = task.settings.tolerances
    try:
        profile, solution = build_profile(
            problem,
            n_samples=task.settings.n_samples,
            solve_tol=tolerances.solve_tol,
            quad_tol=tolerances.quad_tol,
        )
        report = verify_profile(profile)
    except StationaryWaveError as e:
        return SweepRow(value=task.value, b=b, exists=True, status=type(e).__name__)

    amplitude = classify(physical_form(problem), solution)
    return SweepRow(
        value=task.value,
        b=b,
        exists=True,
        status=STATUS_OK,
        c=solution.c,
        y0=solution.y0,
        u0=amplitude.u0,
        classification=amplitude.classification,
        residuals=Residuals.from_report(report),
        iterations=solution.iterations,
    )


def compute_rows(tasks: list[SweepTask], jobs: int) -> list[SweepRow]:
    """Rows in grid order, whatever order the workers finish in."""
    if jobs <= 1:
        return [sweep_point(task) for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(sweep_point, tasks))


def print_sweep_table(document: SweepDocument) -> None:
    fixed = ", ".join(f"{k}={v!r}" for k, v in document.fixed.items())
    title = f"{document.equation.value} sweep over {document.parameter}"
    if fixed:
        title += f" ({fixed})"
    table = Table(title=title, show_header=True, header_style="bold")
    table.add_column(document.parameter, style="cyan")
    table.add_column("b")
    table.add_column("Status")
    table.add_column("c")
    table.add_column("u0")
    table.add_column("Type")
    table.add_column("ODE residual")

    for row in document.rows:
        if row.status == STATUS_OK:
            status = "[green]✓ ok[/green]"
        elif row.status == STATUS_NO_SOLUTION:
            status = "[yellow]no solution[/yellow]"
        else:
            status = f"[red]✗ {row.status}[/red]"
        table.add_row(
            f"{row.value:.6g}",
            "-" if row.b is None else f"{row.b:.6g}",
            status,
            "-" if row.c is None else f"{row.c:.10g}",
            "-" if row.u0 is None else f"{row.u0:.10g}",
            "-" if row.classification is None else row.classification.value,
            "-" if row.residuals is None else f"{row.residuals.ode3:.2e}",
        )

    console.print(table)


def run_sweep(
    equation: EquationKind,
    parameter: str,
    start: float,
    stop: float,
    count: int,
    settings: SolverSettings,
    a: Optional[float] = None,
    length: Optional[float] = None,
    out: Optional[Path] = None,
    plot_data: Optional[Path] = None,
) -> None:
    """Solve every grid point and report a table.

    Nonexistence points are marked in their rows, not fatal.

    Raises:
        SystemExit: 3 when every point fails numerically, 4 on I/O errors.
    """
    grid = sweep_grid(start, stop, count)
    tasks = [
        SweepTask(equation, parameter, float(value), a, length, settings)
        for value in grid
    ]
    rows = compute_rows(tasks, settings.jobs)

    fixed = {}
    if parameter == "L":
        fixed["a"] = a
    elif parameter == "a":
        fixed["L"] = length
    document = SweepDocument(
        equation=equation,
        parameter=parameter,
        fixed=fixed,
        n_samples=settings.n_samples,
        tolerances=settings.tolerances,
        rows=rows,
    )

    print_sweep_table(document)

    try:
        if out is not None:
            ensure_parent_directory(out).write_text(sweep_text(document), encoding="utf-8")
            console.print(f"[green]✓[/green] Sweep written to [cyan]{out}[/cyan]")
        if plot_data is not None:
            solved = [row for row in rows if row.status == STATUS_OK]
            write_plot_data(
                [row.value for row in solved],
                [row.u0 for row in solved],
                plot_data,
                header=f"{parameter} u0",
            )
    except OSError as e:
        fail(f"Failed to write results: {e}", EXIT_IO_ERROR)

    failed = [row for row in rows if row.exists and row.status != STATUS_OK]
    if failed and len(failed) == len(rows):
        fail(f"all {len(rows)} sweep points failed numerically", EXIT_ALL_FAILED)
