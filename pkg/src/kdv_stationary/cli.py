"""CLI entry point for kdv-stationary."""

from pathlib import Path
from typing import Optional

import click
from rich.console import Console

from . import __version__
from .numerics.potentials import EquationKind

console = Console()

EQUATION_CHOICE = click.Choice([kind.value for kind in EquationKind])


def _settings(
    config: Optional[Path],
    samples: Optional[int],
    solve_tol: Optional[float],
    quad_tol: Optional[float],
    jobs: Optional[int] = None,
):
    """Settings file (or bundled defaults) with CLI overrides; exit 4 when unusable."""
    from .commands.solve import EXIT_IO_ERROR, fail
    from .config.loader import load_settings, merge_settings_with_cli

    try:
        base = load_settings(config) if config is not None else None
        return merge_settings_with_cli(
            base, n_samples=samples, solve_tol=solve_tol, quad_tol=quad_tol, jobs=jobs
        )
    except (OSError, ValueError) as e:
        fail(f"Invalid settings: {e}", EXIT_IO_ERROR)


def _run_config(
    equation: str,
    a: Optional[float],
    length: Optional[float],
    b: Optional[float],
    settings,
    out: Optional[Path],
    profile_out: Optional[Path],
    plot_data: Optional[Path],
    harmonic: Optional[int] = None,
):
    """Validated RunConfig; exit 4 on inconsistent parameters."""
    from .commands.solve import EXIT_IO_ERROR, fail
    from .config.schema import RunConfig

    try:
        run_config = RunConfig(
            equation=EquationKind(equation),
            a=a,
            length=length,
            b=b,
            settings=settings,
            out=out,
            profile_out=profile_out,
            plot_data=plot_data,
            harmonic=harmonic,
        )
        run_config.problem()
    except ValueError as e:
        fail(f"Invalid parameters: {e}", EXIT_IO_ERROR)
    return run_config


def problem_options(func):
    """Options shared by solve and harmonics."""
    options = [
        click.option("--equation", "-e", type=EQUATION_CHOICE, required=True, help="Equation kind."),
        click.option("--a", "a", type=float, default=None, help="Linear coefficient a (with --L)."),
        click.option("--L", "length", type=float, default=None, help="Interval length L (with --a)."),
        click.option("--b", "b", type=float, default=None, help="Normalized coefficient b = a L^2 / 4."),
        click.option("--samples", type=int, default=None, help="Samples per fundamental period (odd)."),
        click.option("--solve-tol", type=float, default=None, help="Accepted |I(b, c) - 1|."),
        click.option("--quad-tol", type=float, default=None, help="Period integral relative tolerance."),
        click.option(
            "--config", "-c", type=click.Path(path_type=Path), default=None,
            help="Settings JSON (see init-config).",
        ),
        click.option("--out", "-o", type=click.Path(path_type=Path), default=None, help="Result document path."),
        click.option("--profile-out", type=click.Path(path_type=Path), default=None, help="Profile CSV path."),
        click.option("--plot-data", type=click.Path(path_type=Path), default=None, help="Two-column x/u file."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@click.group()
@click.version_option(version=__version__, prog_name="kdv-stationary")
def main():
    """kdv-stationary - stationary periodic waves of KdV and mKdV.

    Solves u''' + a u' + N(u) u' = 0 on [0, L] with u(0) = u(L) = u'(L) = 0
    for N(u) = u (kdv), u^2 (mkdv-focusing) or -u^2 (mkdv-defocusing).

    Exit status: 0 success, 1 verification failure, 2 no solution exists,
    3 numerical failure, 4 I/O or parse failure.
    """
    from .commands.solve import EXIT_IO_ERROR, fail
    from .utils.logs import configure_logging

    try:
        configure_logging()
    except ValueError as e:
        fail(str(e), EXIT_IO_ERROR)


@main.command("solve")
@problem_options
def solve(equation, a, length, b, samples, solve_tol, quad_tol, config, out, profile_out, plot_data):
    """Solve one problem given by --a with --L, or by --b.

    Example:
        kdv-stationary solve --equation kdv --a 1 --L 3 --out run.json
    """
    from .commands.solve import run_solve

    settings = _settings(config, samples, solve_tol, quad_tol)
    run_solve(_run_config(equation, a, length, b, settings, out, profile_out, plot_data))


@main.command("harmonics")
@problem_options
@click.option("--n", "n", type=click.IntRange(min=1), default=1, show_default=True, help="Harmonic index.")
def harmonics(equation, a, length, b, samples, solve_tol, quad_tol, config, out, profile_out, plot_data, n):
    """Solution with fundamental period L/n.

    Built from the problem with coefficient a/n^2 (kdv and mkdv-focusing).

    Example:
        kdv-stationary harmonics --equation kdv --a 1 --L 6 --n 2 --out h2.json
    """
    from .commands.harmonics import run_harmonics

    settings = _settings(config, samples, solve_tol, quad_tol)
    run_harmonics(_run_config(equation, a, length, b, settings, out, profile_out, plot_data, harmonic=n))


@main.command("sweep")
@click.option("--equation", "-e", type=EQUATION_CHOICE, required=True, help="Equation kind.")
@click.option("--param", "parameter", type=click.Choice(["L", "a", "b"]), required=True, help="Swept parameter.")
@click.option("--start", type=float, required=True, help="First grid value.")
@click.option("--stop", type=float, required=True, help="Last grid value.")
@click.option("--count", type=click.IntRange(min=2), required=True, help="Number of grid points.")
@click.option("--a", "a", type=float, default=None, help="Fixed a when sweeping L.")
@click.option("--L", "length", type=float, default=None, help="Fixed L when sweeping a.")
@click.option("--jobs", "-j", type=click.IntRange(min=1), default=None, help="Worker processes.")
@click.option("--samples", type=int, default=None, help="Samples per fundamental period (odd).")
@click.option("--solve-tol", type=float, default=None, help="Accepted |I(b, c) - 1|.")
@click.option("--quad-tol", type=float, default=None, help="Period integral relative tolerance.")
@click.option("--config", "-c", type=click.Path(path_type=Path), default=None, help="Settings JSON.")
@click.option("--out", "-o", type=click.Path(path_type=Path), default=None, help="Sweep table JSON path.")
@click.option("--plot-data", type=click.Path(path_type=Path), default=None, help="Two-column value/u0 file.")
def sweep(
    equation, parameter, start, stop, count, a, length, jobs,
    samples, solve_tol, quad_tol, config, out, plot_data,
):
    """Solve along a grid of L (fixed a), a (fixed L) or b.

    Points without a solution are marked in the table, not fatal.

    Example:
        kdv-stationary sweep --equation kdv --param L --a 1 --start 3.14 --stop 9.42 --count 9
    """
    from .commands.solve import EXIT_IO_ERROR, fail
    from .commands.sweep import run_sweep

    required = {"L": ("--a", a), "a": ("--L", length)}
    if parameter in required:
        flag, value = required[parameter]
        if value is None:
            fail(f"sweeping {parameter} needs {flag}", EXIT_IO_ERROR)
    elif a is not None or length is not None:
        fail("sweeping b takes neither --a nor --L", EXIT_IO_ERROR)

    settings = _settings(config, samples, solve_tol, quad_tol, jobs)
    run_sweep(
        EquationKind(equation),
        parameter,
        start,
        stop,
        count,
        settings,
        a=a,
        length=length,
        out=out,
        plot_data=plot_data,
    )


@main.command("verify")
@click.argument("document", type=click.Path(path_type=Path))
def verify(document: Path):
    """Recompute every residual of a stored result document.

    Example:
        kdv-stationary verify run.json
    """
    from .commands.verify import run_verify

    run_verify(document)


@main.command("init-config")
@click.option(
    "--output",
    "-o",
    default="./kdv-stationary.json",
    help="Output path for the settings file.",
)
def init_config(output: str):
    """Generate a default settings file.

    Example:
        kdv-stationary init-config -o ./settings.json
    """
    from .config.loader import write_default_settings

    path = Path(output)

    if path.exists():
        if not click.confirm(f"{output} already exists. Overwrite?"):
            console.print("[yellow]Aborted.[/yellow]")
            return

    write_default_settings(path)
    console.print(f"[green]✓[/green] Settings file created at: [cyan]{output}[/cyan]")
    console.print("\n[dim]Edit this file to configure:[/dim]")
    console.print("  • Solve and quadrature tolerances")
    console.print("  • Verification tolerances")
    console.print("  • Samples per period and sweep worker count")


@main.command("env-help")
def env_help():
    """Show available environment variables.

    Example:
        kdv-stationary env-help
    """
    from .config.env import print_env_var_help

    console.print("[bold]Environment Variables for kdv-stationary[/bold]\n")
    print_env_var_help()
    console.print("\n[dim]Example usage:[/dim]")
    console.print("[cyan]KDV_STATIONARY_LOG_LEVEL[/cyan]=debug kdv-stationary solve --equation kdv --b 0")


if __name__ == "__main__":
    main()
