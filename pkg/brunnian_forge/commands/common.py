"""Input, output and exit-code helpers shared by the commands"""

from pathlib import Path
from typing import NoReturn, Optional

import typer
from rich.console import Console

from ..config import settings
from ..errors import BrunnianForgeError
from ..metrics import FAILURES, VERDICTS
from ..schemas import load_input
from ..topology.presentation import LinkPresentation, validate_presentation
from ..topology.reidemeister import SimplifyBudget

console = Console()
err_console = Console(stderr=True)

SOURCE_HELP = "Presentation JSON file, or - for stdin"

EXIT_NEGATIVE = 1
EXIT_INPUT = 2


def input_error(e: Exception | str) -> NoReturn:
    """Report a malformed input on one stderr line and exit 2"""
    FAILURES.inc()
    err_console.print(f"[red]Error: {e}[/red]", soft_wrap=True)
    raise typer.Exit(EXIT_INPUT)


def read_source(source: str) -> str:
    if source == "-":
        return typer.get_text_stream("stdin").read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        input_error(f"cannot read {source}: {e.strerror or e}")


def load(
    source: str, allow_diagram: bool = False, strict: bool = True
) -> LinkPresentation:
    """Read and parse an input, exiting 2 on any malformed content.

    Strict loading also exits 2 on the first problem validation finds.
    """
    text = read_source(source)
    try:
        presentation = load_input(text, allow_diagram=allow_diagram)
    except BrunnianForgeError as e:
        input_error(e)
    if strict:
        problems = validate_presentation(presentation)
        if problems:
            input_error(problems[0])
    return presentation


def budget(r3_depth: Optional[int], max_states: Optional[int]) -> SimplifyBudget:
    try:
        return SimplifyBudget(
            r3_depth if r3_depth is not None else settings.r3_depth,
            max_states if max_states is not None else settings.max_states,
        )
    except ValueError as e:
        input_error(e)


def emit(text: str, outfile: Optional[str], what: str) -> None:
    """Write text to stdout, or to a file with a confirmation line"""
    if not text.endswith("\n"):
        text += "\n"
    if outfile is None:
        typer.echo(text, nl=False)
        return
    output_path = Path(outfile)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", encoding="utf-8") as f:
        f.write(text)
    console.print(f"[green]✅ {what} saved to: {outfile}[/green]")


def finish(command: str, verdict: str, ok: bool) -> None:
    """Count the verdict; exit 1 when it is negative"""
    VERDICTS.labels(command=command, verdict=verdict).inc()
    if not ok:
        raise typer.Exit(EXIT_NEGATIVE)
