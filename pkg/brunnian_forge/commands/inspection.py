"""Diagram inspection commands"""

import json
from typing import Optional

import typer
from rich.table import Table

from ..errors import BrunnianForgeError
from ..metrics import record_moves
from ..schemas import parse_certificate
from ..topology.certificates import replay_certificate
from ..topology.codes import emit_pd
from ..topology.diagram import is_alternating, linking_matrix
from ..topology.presentation import LinkPresentation, validate_presentation
from ..topology.reidemeister import (
    BrunnianReport,
    BrunnianVerdict,
    brunnian_report,
    simplify as simplify_diagram,
)
from .common import (
    SOURCE_HELP,
    budget,
    console,
    emit,
    err_console,
    finish,
    input_error,
    load,
    read_source,
)

DIAGRAM_SOURCE_HELP = SOURCE_HELP + " (PD/Gauss accepted)"


def _json(payload: dict) -> None:
    typer.echo(json.dumps(payload, indent=2, ensure_ascii=False))


def validate(
    source: str = typer.Argument(..., help=DIAGRAM_SOURCE_HELP),
    certificate: Optional[str] = typer.Option(
        None, "--certificate", "-c", help="Certificate to replay against the input"
    ),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
):
    """Check a diagram or presentation, optionally replaying a certificate"""
    presentation = load(source, allow_diagram=True, strict=False)
    problems = validate_presentation(presentation)
    if certificate is not None and not problems:
        try:
            cert = parse_certificate(read_source(certificate))
        except BrunnianForgeError as e:
            input_error(e)
        try:
            problems = replay_certificate(presentation, cert)
        except (KeyError, TypeError, ValueError) as e:
            input_error(f"certificate evidence is malformed: {e!r}")

    if as_json:
        _json({"valid": not problems, "problems": problems})
    elif problems:
        for problem in problems:
            console.print(f"[red]✗[/red] {problem}", soft_wrap=True)
    else:
        console.print(
            f"[green]✅ valid: {presentation.n_components} components, "
            f"{presentation.diagram.crossing_count} crossings[/green]"
        )
    finish("validate", "valid" if not problems else "invalid", not problems)


def lk(
    source: str = typer.Argument(..., help=DIAGRAM_SOURCE_HELP),
    as_json: bool = typer.Option(False, "--json", help="Print the matrix as JSON"),
):
    """Print the linking matrix"""
    presentation = load(source, allow_diagram=True)
    matrix = linking_matrix(presentation.diagram)

    if as_json:
        _json({"components": presentation.n_components, "matrix": matrix.tolist()})
        return
    _display_matrix(presentation, matrix.tolist())


def alternating(
    source: str = typer.Argument(..., help=DIAGRAM_SOURCE_HELP),
):
    """Exit 0 when the diagram is alternating, 1 otherwise"""
    presentation = load(source, allow_diagram=True)
    result = is_alternating(presentation.diagram)
    typer.echo("alternating" if result else "not alternating")
    finish("alternating", str(result).lower(), result)


def simplify(
    source: str = typer.Argument(..., help=DIAGRAM_SOURCE_HELP),
    r3_depth: Optional[int] = typer.Option(None, "--r3-depth", help="R3 search depth"),
    max_states: Optional[int] = typer.Option(
        None, "--max-states", help="R3 search state budget"
    ),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Write the simplified PD code to a file"
    ),
):
    """Simplify with Reidemeister moves and print the reduced PD code"""
    presentation = load(source, allow_diagram=True)
    limits = budget(r3_depth, max_states)
    with err_console.status("[bold green]Simplifying..."):
        result = simplify_diagram(presentation.diagram, limits)
    record_moves(result.trace)

    if as_json:
        _json(
            {
                "crossings_before": presentation.diagram.crossing_count,
                "crossings_after": result.diagram.crossing_count,
                "exhausted": result.exhausted,
                "trace": [
                    {"kind": m.kind.value, "site": list(m.site)} for m in result.trace
                ],
                "pd": emit_pd(result.diagram),
            }
        )
        return
    err_console.print(
        f"{presentation.diagram.crossing_count} → {result.diagram.crossing_count} "
        f"crossings in {len(result.trace)} moves"
        + (" (budget exhausted)" if result.exhausted else "")
    )
    emit(emit_pd(result.diagram), outfile, "Simplified diagram")


def brunnian(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    r3_depth: Optional[int] = typer.Option(None, "--r3-depth", help="R3 search depth"),
    max_states: Optional[int] = typer.Option(
        None, "--max-states", help="R3 search state budget"
    ),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
):
    """Witness the Brunnian property: trivial sublinks, nontrivial link"""
    presentation = load(source, allow_diagram=True)
    limits = budget(r3_depth, max_states)
    with err_console.status("[bold green]Deleting components..."):
        report = brunnian_report(presentation, limits)
    for result in report.deletions.values():
        record_moves(result.certificate)

    if as_json:
        _json(
            {
                "deletions": {
                    presentation.label(i): r.verdict.value
                    for i, r in report.deletions.items()
                },
                "nontriviality": report.nontriviality.value,
                "evidence": report.evidence,
                "verdict": report.verdict.value,
            }
        )
    else:
        _display_brunnian(presentation, report)
    witnessed = report.verdict is BrunnianVerdict.BRUNNIAN_WITNESSED
    finish("brunnian", report.verdict.value, witnessed)


def _display_matrix(p: LinkPresentation, rows: list[list[int]]):
    """Display the linking matrix in a formatted table"""

    table = Table(title="Linking matrix")
    table.add_column("", style="cyan", no_wrap=True)
    for c in range(p.n_components):
        table.add_column(p.label(c), style="magenta", justify="right")
    for c, row in enumerate(rows):
        table.add_row(p.label(c), *(str(x) for x in row))

    console.print(table)


def _display_brunnian(p: LinkPresentation, report: BrunnianReport):
    table = Table(title="Brunnian report")
    table.add_column("Deleted", style="cyan", no_wrap=True)
    table.add_column("Result", style="magenta")
    table.add_column("Moves", justify="right")
    for i, result in report.deletions.items():
        table.add_row(
            p.label(i), result.verdict.value, str(len(result.certificate))
        )

    console.print()
    console.print(table)
    console.print(f"Nontriviality: {report.nontriviality.value} {report.evidence}")
    console.print(f"Verdict: [bold]{report.verdict.value}[/bold]")
