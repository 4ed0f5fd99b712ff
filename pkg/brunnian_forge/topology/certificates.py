"""
Certificate assembly and replay.

A certificate separates what the machine checked (facts, per-orbit evidence)
from what a human must supply (assumptions). Replaying a certificate against
its presentation recomputes every recorded check from the presentation alone.
"""

import logging
from collections.abc import Mapping
from datetime import UTC, datetime
from typing import Any

from ..errors import HypothesisError
from ..schemas import CertificateFile, presentation_digest
from .diagram import delete_components, linking_number, split_families
from .families import all_bipartitions, side_with_zero, symmetry_group
from .presentation import LinkPresentation
from .reidemeister import Move, MoveKind, replay_moves
from .sprime import (
    BipartitionHypothesis,
    CaseAnalysis,
    DiskRole,
    ManualAssumption,
    OrbitResult,
    Rule,
    SPrimeVerdict,
    UntiedReport,
    case6_classify,
    disk_role,
    quadruple,
    untied_check,
    untied_threshold,
)
from .stability import StabilityStatus, StabilityVerdict, certify_stable

logger = logging.getLogger(__name__)

CERTIFICATE_VERSION = 1


def _assumption(a: ManualAssumption) -> dict[str, str]:
    return {"basis": a.basis, "statement": a.statement}


def _hypothesis(p: LinkPresentation, h: BipartitionHypothesis) -> dict[str, Any]:
    record: dict[str, Any] = {
        "I": sorted(h.I),
        "J": sorted(h.J),
        "labels": h.describe(p),
    }
    if h.case is not None:
        record["case"] = h.case
    return record


def _sidecar(stamp: bool) -> dict[str, str] | None:
    if not stamp:
        return None
    return {"generated_at": datetime.now(UTC).isoformat(timespec="seconds")}


def orbit_record(p: LinkPresentation, result: OrbitResult) -> dict[str, Any]:
    record: dict[str, Any] = {
        "representative": _hypothesis(p, result.representative),
        "members": [list(m) for m in result.members],
    }
    if result.refutation is None:
        record |= {
            "status": "Unresolved",
            "reason": result.reason,
            "cases": result.cases,
            "obligations": list(result.obligations),
        }
        return record
    record |= {
        "status": "Refuted",
        "rule": result.refutation.rule.value,
        "via": _hypothesis(p, result.via),
        "transport": list(result.transport),
        "evidence": result.refutation.evidence,
        "assumptions": [a.basis for a in result.refutation.assumptions],
    }
    return record


def sprime_certificate(
    p: LinkPresentation, analysis: CaseAnalysis, stamp: bool = False
) -> CertificateFile:
    covered = sum(r.size for r in analysis.orbits)
    facts = [
        {"check": "focus", "disks": list(analysis.focus)},
        {
            "check": "orbit-cover",
            "bipartitions": len(all_bipartitions(p.n_components)),
            "covered": covered,
            "orbits": len(analysis.orbits),
        },
    ]
    return CertificateFile(
        version=CERTIFICATE_VERSION,
        kind="sprime",
        presentation_digest=presentation_digest(p),
        facts=facts,
        orbits=[orbit_record(p, r) for r in analysis.orbits],
        assumptions=[_assumption(a) for a in analysis.assumptions],
        regularity=dict(p.meta.regularity),
        verdict=analysis.verdict.value,
        sidecar=_sidecar(stamp),
    )


def untied_certificate(
    p: LinkPresentation, report: UntiedReport, stamp: bool = False
) -> CertificateFile:
    lk = linking_number(p.diagram, 0, 1) if p.n_components == 2 else None
    facts: list[dict[str, Any]] = [
        {
            "check": "threshold",
            "components": p.n_components,
            "lk": lk,
            "threshold": report.threshold,
        }
    ]
    facts += [
        {
            "check": "sn",
            "disk": c.disk,
            "N": report.threshold,
            "holds": c.sn.holds,
            "via": c.sn.via.value if c.sn.via else None,
            "total": c.sn.total,
        }
        for c in report.checks
    ]
    facts.append({"check": "missing", "items": list(report.missing)})
    return CertificateFile(
        version=CERTIFICATE_VERSION,
        kind="untied",
        presentation_digest=presentation_digest(p),
        facts=facts,
        assumptions=[_assumption(a) for a in report.assumptions],
        regularity=dict(report.regularity),
        verdict=report.verdict.value,
        sidecar=_sidecar(stamp),
    )


def stability_fact(disk_id: str, verdict: StabilityVerdict) -> dict[str, Any]:
    return {
        "check": "stable",
        "disk": disk_id,
        "status": verdict.status.value,
        "method": verdict.method,
        "min_bound": verdict.min_bound,
        "actual": verdict.actual,
        "reason": verdict.reason,
        "cases": [
            {
                "pierced_positive_side": a.pierced_positive_side.value,
                "sides": {g: s.value for g, s in sorted(a.sides.items())},
                "bound": bound,
            }
            for a, bound in verdict.cases
        ],
    }


def stable_certificate(
    p: LinkPresentation, verdicts: Mapping[str, StabilityVerdict], stamp: bool = False
) -> CertificateFile:
    certified = all(v.status is StabilityStatus.CERTIFIED for v in verdicts.values())
    return CertificateFile(
        version=CERTIFICATE_VERSION,
        kind="stable",
        presentation_digest=presentation_digest(p),
        facts=[stability_fact(d, v) for d, v in verdicts.items()],
        regularity=dict(p.meta.regularity),
        verdict=(
            StabilityStatus.CERTIFIED if certified else StabilityStatus.INCONCLUSIVE
        ).value,
        sidecar=_sidecar(stamp),
    )


# -- replay -----------------------------------------------------------------


def _replay_cross_bound(
    p: LinkPresentation,
    h: BipartitionHypothesis,
    rule: Rule,
    evidence: Mapping[str, Any],
) -> str | None:
    disk_id = evidence["disk"]
    role = disk_role(p, disk_id, h)
    total = p.registry.total(disk_id)
    bound = {DiskRole.EXTERIOR_CROSS: 4, DiskRole.FREE_CROSS: 6}.get(role)
    expected = {4: Rule.CROSS_BOUND_4, 6: Rule.CROSS_BOUND_6}.get(bound)
    if expected is not rule:
        return f"{disk_id} is {role.value}, not the role {rule.value} needs"
    if total != evidence["total"] or total >= bound:
        return f"{disk_id} has {total} piercings, bound {bound} not violated"
    return None


def _replay_discard(
    p: LinkPresentation, h: BipartitionHypothesis, evidence: Mapping[str, Any]
) -> str | None:
    deleted = frozenset(evidence["deleted"])
    piece = frozenset(evidence["split_off"])
    if deleted and deleted < h.I:
        near, far = h.I, h.J
    elif deleted and deleted < h.J:
        near, far = h.J, h.I
    else:
        return f"deleted set {sorted(deleted)} is not a proper part of one side"
    if not piece <= far:
        return f"split-off set {sorted(piece)} is not on the far side"
    moves = [Move(MoveKind(m["kind"]), tuple(m["site"])) for m in evidence["trace"]]
    try:
        reduced = replay_moves(delete_components(p.diagram, deleted), moves)
    except ValueError as e:
        return f"move trace does not replay: {e}"
    survivors = [c for c in range(p.n_components) if c not in deleted]
    parts = sorted(
        (frozenset(survivors[k] for k in part) for part in split_families(reduced)),
        key=min,
    )
    if [sorted(part) for part in parts] != evidence["partition"]:
        return "recorded partition differs from the replayed one"
    reach = frozenset().union(*(part for part in parts if part & piece))
    if reach & (near - deleted):
        return f"{sorted(piece)} stays linked to the near side"
    return None


def _replay_symmetry(
    p: LinkPresentation, h: BipartitionHypothesis, evidence: Mapping[str, Any]
) -> str | None:
    sigma = tuple(evidence["permutation"])
    if sigma not in symmetry_group(p.symmetries, p.n_components):
        return f"{list(sigma)} is not generated by the declared symmetries"
    overlaps = quadruple(h, sigma)
    if overlaps != evidence["quadruple"] or not all(overlaps.values()):
        return "overlap quadruple does not have four nonempty entries"
    return None


def _replay_case_exhaustion(
    p: LinkPresentation, h: BipartitionHypothesis, evidence: Mapping[str, Any]
) -> str | None:
    if h.case is None or h.case != evidence["case"]:
        return "hypothesis case label differs from the evidence"
    for disk_id, labels in evidence["admitted"].items():
        try:
            admitted = sorted(case6_classify(p, disk_id, h))
        except HypothesisError as e:
            return str(e)
        if admitted != labels or h.case in admitted:
            return f"{disk_id} admits case {h.case}"
    return None


def replay_refutation(
    p: LinkPresentation,
    h: BipartitionHypothesis,
    rule: Rule,
    evidence: Mapping[str, Any],
) -> str | None:
    """Recompute one refutation; None when it still holds, else the mismatch"""
    match rule:
        case Rule.CROSS_BOUND_4 | Rule.CROSS_BOUND_6:
            return _replay_cross_bound(p, h, rule, evidence)
        case Rule.COMPONENT_DISCARD:
            return _replay_discard(p, h, evidence)
        case Rule.SYMMETRY_UNIQUENESS:
            return _replay_symmetry(p, h, evidence)
        case Rule.CASE_EXHAUSTION:
            return _replay_case_exhaustion(p, h, evidence)


def _from_record(record: Mapping[str, Any]) -> BipartitionHypothesis:
    return BipartitionHypothesis(
        frozenset(record["I"]), frozenset(record["J"]), record.get("case")
    )


def _replay_sprime(p: LinkPresentation, cert: CertificateFile) -> list[str]:
    n = p.n_components
    group = symmetry_group(p.symmetries, n)
    problems = []
    covered = {tuple(m) for record in cert.orbits for m in record["members"]}
    if covered != set(all_bipartitions(n)):
        problems.append("orbits do not cover every bipartition")
    for k, record in enumerate(cert.orbits):
        if record["status"] != "Refuted":
            continue
        rep = _from_record(record["representative"])
        via = _from_record(record["via"])
        sigma = tuple(record["transport"])
        target = side_with_zero(via.I, n)
        if sigma not in group or side_with_zero({sigma[c] for c in rep.I}, n) != target:
            problems.append(f"orbit {k}: transport does not carry the representative")
        mismatch = replay_refutation(p, via, Rule(record["rule"]), record["evidence"])
        if mismatch:
            problems.append(f"orbit {k}: {mismatch}")
    refuted = all(record["status"] == "Refuted" for record in cert.orbits)
    expected = (
        SPrimeVerdict.SPRIME_MODULO_ASSUMPTIONS if refuted else SPrimeVerdict.INCOMPLETE
    )
    if cert.verdict != expected.value:
        problems.append(f"verdict {cert.verdict} should be {expected.value}")
    return problems


def _replay_untied(p: LinkPresentation, cert: CertificateFile) -> list[str]:
    witness = next(
        (
            a["statement"]
            for a in cert.assumptions
            if a["basis"] == "complement-witness"
        ),
        None,
    )
    fresh = untied_certificate(p, untied_check(p, witness))
    problems = []
    threshold = next(f["threshold"] for f in cert.facts if f["check"] == "threshold")
    if threshold != untied_threshold(p):
        problems.append(f"threshold {threshold} should be {untied_threshold(p)}")
    if cert.facts != fresh.facts:
        problems.append("per-disk checks differ on replay")
    if cert.verdict != fresh.verdict:
        problems.append(f"verdict {cert.verdict} should be {fresh.verdict}")
    return problems


def _replay_stable(p: LinkPresentation, cert: CertificateFile) -> list[str]:
    problems = []
    for fact in cert.facts:
        fresh = stability_fact(fact["disk"], certify_stable(p, fact["disk"]))
        if fresh != fact:
            problems.append(f"{fact['disk']}: stability check differs on replay")
    return problems


def replay_certificate(p: LinkPresentation, cert: CertificateFile) -> list[str]:
    """Every mismatch between a certificate and its presentation; empty when sound"""
    if cert.presentation_digest != presentation_digest(p):
        return ["presentation digest differs"]
    match cert.kind:
        case "sprime":
            problems = _replay_sprime(p, cert)
        case "untied":
            problems = _replay_untied(p, cert)
        case _:
            problems = _replay_stable(p, cert)
    logger.debug("replayed %s certificate: %d problems", cert.kind, len(problems))
    return problems
