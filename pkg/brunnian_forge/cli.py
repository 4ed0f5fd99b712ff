"""Main CLI application for brunnian_forge"""

import os
import time

import typer
from rich.console import Console

from . import __version__
from .commands import certify, generate, inspection
from .config import settings
from .log import configure_logging
from .metrics import DURATION, RUNS, init_metrics

console = Console()
app = typer.Typer(
    name="brunnian-forge",
    help="brunnian-forge - Brunnian link families and hyperbolicity certificates",
    add_completion=False,
)

# Initialize Prometheus metrics exporter (only in production)
if os.getenv("PYTEST_CURRENT_TEST") is None and settings.metrics_enabled:
    init_metrics(settings.metrics_port)

# Generation
app.command("gen")(generate.gen)
app.command("export")(generate.export)

# Diagram inspection
app.command("validate")(inspection.validate)
app.command("lk")(inspection.lk)
app.command("alternating")(inspection.alternating)
app.command("simplify")(inspection.simplify)
app.command("brunnian")(inspection.brunnian)

# Certification
app.command("stable")(certify.stable)
app.command("sn")(certify.sn)
app.command("sprime")(certify.sprime)
app.command("untied")(certify.untied)


def version_callback(value: bool):
    if value:
        console.print(f"brunnian-forge version: {__version__}")
        raise typer.Exit()


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        None, "--version", "-v", callback=version_callback, help="Show version and exit"
    ),
):
    """brunnian-forge - Brunnian link families and hyperbolicity certificates"""
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())
        return

    configure_logging(settings.log_level)
    RUNS.inc()
    started = time.perf_counter()
    ctx.call_on_close(lambda: DURATION.observe(time.perf_counter() - started))


if __name__ == "__main__":
    app()
