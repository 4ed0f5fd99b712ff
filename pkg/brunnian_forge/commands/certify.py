"""Certification commands: stable disks, (sN), s-primeness and untiedness"""

import json
from typing import Optional

import typer
from rich.table import Table

from ..config import settings
from ..errors import BrunnianForgeError
from ..schemas import dump_json
from ..topology.certificates import (
    sprime_certificate,
    stable_certificate,
    untied_certificate,
)
from ..topology.presentation import LinkPresentation
from ..topology.sprime import (
    CaseAnalysis,
    SPrimeVerdict,
    UntiedReport,
    UntiedVerdict,
    analyze_sprime,
    untied_check,
)
from ..topology.stability import StabilityStatus, certify_stable, sn_check
from .common import SOURCE_HELP, budget, emit, err_console, finish, input_error, load

STAMP_HELP = "Add a generation timestamp in a sidecar field"


def stable(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    disks: Optional[list[str]] = typer.Option(
        None, "--disk", "-d", help="Disk to certify (repeatable; default: all)"
    ),
    stamp: bool = typer.Option(False, "--stamp", help=STAMP_HELP),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Output file path (default: stdout)"
    ),
):
    """Certify registered disks stable and write a certificate"""
    presentation = load(source)
    try:
        chosen = disks or presentation.registry.disk_ids
        verdicts = {d: certify_stable(presentation, d) for d in chosen}
    except BrunnianForgeError as e:
        input_error(e)

    table = Table(title="Stable disks")
    table.add_column("Disk", style="cyan", no_wrap=True)
    table.add_column("Status", style="magenta")
    table.add_column("Method")
    table.add_column("Bound", justify="right")
    table.add_column("Actual", justify="right")
    for d, v in verdicts.items():
        table.add_row(d, v.status.value, v.method, str(v.min_bound), str(v.actual))
    err_console.print(table)

    certificate = stable_certificate(presentation, verdicts, stamp)
    emit(dump_json(certificate), outfile, "Certificate")
    certified = all(v.status is StabilityStatus.CERTIFIED for v in verdicts.values())
    finish("stable", certificate.verdict, certified)


def sn(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    disk: str = typer.Option(..., "--disk", "-d", help="Registered disk id"),
    threshold: int = typer.Option(..., "--N", help="Piercing threshold N"),
    as_json: bool = typer.Option(False, "--json", help="Print a JSON report"),
):
    """Check the (sN) condition for one disk"""
    presentation = load(source)
    try:
        result = sn_check(presentation, disk, threshold)
    except BrunnianForgeError as e:
        input_error(e)

    if as_json:
        typer.echo(
            json.dumps(
                {
                    "disk": disk,
                    "N": threshold,
                    "holds": result.holds,
                    "via": result.via.value if result.via else None,
                    "total": result.total,
                },
                indent=2,
            )
        )
    else:
        typer.echo(str(result))
    finish("sn", str(result), result.holds)


def sprime(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    focus: Optional[list[str]] = typer.Option(
        None, "--disk", "-d", help="Disk of the analysed system (repeatable)"
    ),
    r3_depth: Optional[int] = typer.Option(None, "--r3-depth", help="R3 search depth"),
    max_states: Optional[int] = typer.Option(
        None, "--max-states", help="R3 search state budget"
    ),
    max_discard: Optional[int] = typer.Option(
        None, "--max-discard", help="U-components deleted together"
    ),
    stamp: bool = typer.Option(False, "--stamp", help=STAMP_HELP),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Output file path (default: stdout)"
    ),
):
    """Refute every splitting-torus hypothesis and write a certificate"""
    presentation = load(source)
    limits = budget(r3_depth, max_states)
    try:
        with err_console.status("[bold green]Analysing bipartitions..."):
            analysis = analyze_sprime(
                presentation,
                limits,
                focus,
                max_discard if max_discard is not None else settings.max_discard,
            )
    except BrunnianForgeError as e:
        input_error(e)

    _display_orbits(presentation, analysis)
    certificate = sprime_certificate(presentation, analysis, stamp)
    emit(dump_json(certificate), outfile, "Certificate")
    ok = analysis.verdict is SPrimeVerdict.SPRIME_MODULO_ASSUMPTIONS
    finish("sprime", analysis.verdict.value, ok)


def untied(
    source: str = typer.Argument(..., help=SOURCE_HELP),
    witness: Optional[str] = typer.Option(
        None, "--witness", help="Declared complement statement, kept as an assumption"
    ),
    stamp: bool = typer.Option(False, "--stamp", help=STAMP_HELP),
    outfile: Optional[str] = typer.Option(
        None, "--outfile", "-o", help="Output file path (default: stdout)"
    ),
):
    """Check the untiedness hypotheses and write a certificate"""
    presentation = load(source)
    report = untied_check(presentation, witness)

    _display_untied(report)
    certificate = untied_certificate(presentation, report, stamp)
    emit(dump_json(certificate), outfile, "Certificate")
    ok = report.verdict is UntiedVerdict.UNTIED_MODULO_ASSUMPTIONS
    finish("untied", report.verdict.value, ok)


def _display_orbits(p: LinkPresentation, analysis: CaseAnalysis):
    """Display per-orbit outcomes in a formatted table"""

    table = Table(title=f"Bipartition orbits ({', '.join(analysis.focus)})")
    table.add_column("I", style="cyan")
    table.add_column("Size", justify="right")
    table.add_column("Outcome", style="magenta")
    for result in analysis.orbits:
        side = ",".join(p.label(c) for c in sorted(result.representative.I))
        outcome = result.refutation.rule.value if result.refutation else "Unresolved"
        table.add_row(side, str(result.size), outcome)

    err_console.print(table)
    err_console.print(f"Verdict: [bold]{analysis.verdict.value}[/bold]")


def _display_untied(report: UntiedReport):
    table = Table(title=f"(s{report.threshold}) per disk")
    table.add_column("Disk", style="cyan", no_wrap=True)
    table.add_column("Piercings", justify="right")
    table.add_column("Result", style="magenta")
    for check in report.checks:
        table.add_row(check.disk, str(check.sn.total), str(check.sn))

    err_console.print(table)
    if report.missing:
        err_console.print(f"[yellow]Missing: {', '.join(report.missing)}[/yellow]")
    err_console.print(f"Verdict: [bold]{report.verdict.value}[/bold]")
