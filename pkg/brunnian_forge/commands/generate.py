"""Generation commands: build family presentations and export diagram codes"""

from enum import StrEnum
from typing import Optional

import typer

from ..errors import FamilyParameterError
from ..schemas import dump_json, presentation_to_file
from ..topology.codes import emit_gauss, emit_pd
from ..topology.families import FamilySpec, generate
from ..topology.presentation import LinkPresentation
from .common import SOURCE_HELP, emit, err_console, input_error, load


class OutputFormat(StrEnum):
    JSON = "json"
    PD = "pd"
    GAUSS = "gauss"


def _render(p: LinkPresentation, fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.PD:
            return emit_pd(p.diagram)
        case OutputFormat.GAUSS:
            return emit_gauss(p.diagram)
        case _:
            return dump_json(presentation_to_file(p))


def _parse_indices(text: Optional[str]) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        input_error(f"--indices expects comma-separated integers, got {text!r}")


def gen(
    family: str = typer.Option(
        ..., "--family", "-f", help="lamp, debrunner, w, torusgrid, tube, ..."
    ),
    n: Optional[int] = typer.Option(None, "--n", help="Family parameter n"),
    m: Optional[int] = typer.Option(None, "--m", help="Family parameter m"),
    p: Optional[int] = typer.Option(None, "--p", help="Carpet parameter p"),
    indices: Optional[str] = typer.Option(
        None, "--indices", help="Lamp twist indices, e.g. 1,1,1,1"
    ),
    fmt: OutputFormat = typer.Option(
        OutputFormat.JSON, "--format", help="Output format"
    ),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Output file path (default: stdout)"
    ),
):
    """Generate a family member as a presentation, PD or Gauss code"""
    try:
        spec = FamilySpec.parse(family, n=n, m=m, p=p, indices=_parse_indices(indices))
        with err_console.status(f"[bold green]Building {spec.family.value}..."):
            presentation = generate(spec)
    except FamilyParameterError as e:
        input_error(e)

    emit(_render(presentation, fmt), outfile, "Presentation")


def export(
    source: str = typer.Argument(..., help=SOURCE_HELP + " (PD/Gauss accepted)"),
    fmt: OutputFormat = typer.Option(OutputFormat.PD, "--format", help="Output format"),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Output file path (default: stdout)"
    ),
):
    """Export the diagram of an input as PD, Gauss or presentation JSON"""
    presentation = load(source, allow_diagram=True)
    emit(_render(presentation, fmt), outfile, "Diagram")
