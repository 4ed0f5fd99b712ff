"""
Stable-disk certificates and the (sN) condition.

Two lower bounds on how often any competing disk must meet the piercing
component: the sphere-crossing count over every side assignment of the other
generators, and the clasp-chain bound for declared clasp patterns.
"""

import itertools
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from enum import StrEnum

from ..errors import IncompleteAssignmentError
from .presentation import ClaspPattern, LinkPresentation, Side, word_from_piercings
from .words import CyclicWord


@dataclass(frozen=True)
class SideAssignment:
    pierced: str
    sides: Mapping[str, Side]
    pierced_positive_side: Side = Side.POS

    def swapped(self) -> "SideAssignment":
        return SideAssignment(
            self.pierced,
            {g: s.opposite() for g, s in self.sides.items()},
            self.pierced_positive_side.opposite(),
        )


class StabilityStatus(StrEnum):
    CERTIFIED = "Certified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class StabilityVerdict:
    status: StabilityStatus
    min_bound: int
    actual: int
    cases: tuple[tuple[SideAssignment, int], ...] = ()
    method: str = "sphere-count"
    reason: str = ""


class SnVia(StrEnum):
    COUNT_BELOW_N = "CountBelowN"
    STABLE_CERTIFICATE = "StableCertificate"


@dataclass(frozen=True)
class SnResult:
    holds: bool
    via: SnVia | None = None
    total: int = 0
    detail: StabilityVerdict | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"Holds({self.via.value})" if self.holds else "Unknown"


def sphere_crossing_count(word: CyclicWord, assignment: SideAssignment) -> int:
    """Count adjacent half-letters lying on opposite sides of the sphere.

    A pierced letter g becomes (opposite, positive side) and g^-1 the reverse;
    the pair inside one pierced letter crosses the original disk, not the
    sphere, and is skipped.

    Raises:
        IncompleteAssignmentError: when a generator has no side
    """
    pps = assignment.pierced_positive_side
    tokens: list[tuple[Side, bool]] = []  # (side, continues the same letter)
    for letter in word:
        if letter.generator == assignment.pierced:
            if letter.sign > 0:
                first, second = pps.opposite(), pps
            else:
                first, second = pps, pps.opposite()
            tokens.append((first, False))
            tokens.append((second, True))
            continue
        side = assignment.sides.get(letter.generator)
        if side is None:
            raise IncompleteAssignmentError(
                f"no side assigned to generator {letter.generator}"
            )
        tokens.append((side, False))

    count = 0
    for k, (side, _) in enumerate(tokens):
        nxt_side, internal = tokens[(k + 1) % len(tokens)]
        if not internal and side != nxt_side:
            count += 1
    return count


def clasp_chain_certificate(m: int, pattern: ClaspPattern | None = None) -> int:
    """Least number of points a competing disk meets the 2m clasped arcs in.

    Brute force over x_i in {0, 2}; a constraint (i, partners) holds when
    x_i >= 2 or every partner has x >= 2.
    """
    if m <= 0:
        raise ValueError("clasp chain needs m >= 1")
    pattern = pattern or ClaspPattern.chain(m)
    arcs = pattern.arcs
    best = None
    for xs in itertools.product((0, 2), repeat=arcs):
        if all(
            xs[i - 1] >= 2 or all(xs[j - 1] >= 2 for j in partners)
            for i, partners in pattern.constraints
        ):
            total = sum(xs)
            best = total if best is None else min(best, total)
    return best or 0


def _single_piercer(p: LinkPresentation, disk_id: str) -> int | None:
    piercers = p.registry.piercers(disk_id)
    if len(piercers) != 1:
        return None
    return next(iter(piercers))


def stable_disk_certificate(
    p: LinkPresentation,
    disk_id: str,
    constraint_hook: Callable[[SideAssignment], bool] | None = None,
) -> StabilityVerdict:
    """Certify a disk stable by enumerating every side assignment.

    Args:
        p: Presentation holding the disk
        disk_id: Registered disk
        constraint_hook: Optional filter on assignments, a manual restriction

    Raises:
        RegistryError: if the disk is unregistered
    """
    p.registry.disk(disk_id)
    total = p.registry.total(disk_id)
    if total == 0:
        return StabilityVerdict(StabilityStatus.CERTIFIED, 0, 0)
    component = _single_piercer(p, disk_id)
    if component is None:
        return StabilityVerdict(
            StabilityStatus.INCONCLUSIVE, 0, total, reason="MultiComponentDisk"
        )

    word = word_from_piercings(p, component)
    others = sorted({letter.generator for letter in word} - {disk_id})
    cases = []
    for pps in (Side.POS, Side.NEG):
        for sides in itertools.product((Side.POS, Side.NEG), repeat=len(others)):
            assignment = SideAssignment(disk_id, dict(zip(others, sides)), pps)
            if constraint_hook is not None and not constraint_hook(assignment):
                continue
            cases.append((assignment, sphere_crossing_count(word, assignment)))
    if not cases:
        return StabilityVerdict(
            StabilityStatus.INCONCLUSIVE,
            0,
            total,
            reason="constraint hook excluded every case",
        )
    min_bound = min(bound for _, bound in cases)
    certified = min_bound >= total
    status = StabilityStatus.CERTIFIED if certified else StabilityStatus.INCONCLUSIVE
    return StabilityVerdict(status, min_bound, total, tuple(cases))


def clasp_verdict(p: LinkPresentation, disk_id: str) -> StabilityVerdict | None:
    """Certificate from the disk's declared clasp pattern, if it has one"""
    disk = p.registry.disk(disk_id)
    if disk.clasp is None or _single_piercer(p, disk_id) is None:
        return None
    total = p.registry.total(disk_id)
    bound = clasp_chain_certificate(disk.clasp.arcs // 2, disk.clasp)
    certified = bound >= total
    status = StabilityStatus.CERTIFIED if certified else StabilityStatus.INCONCLUSIVE
    return StabilityVerdict(status, bound, total, method="clasp-chain")


def certify_stable(p: LinkPresentation, disk_id: str) -> StabilityVerdict:
    """Sphere-count certificate, falling back to the clasp chain"""
    verdict = stable_disk_certificate(p, disk_id)
    if verdict.status is StabilityStatus.CERTIFIED:
        return verdict
    return clasp_verdict(p, disk_id) or verdict


def sn_check(p: LinkPresentation, disk_id: str, n: int) -> SnResult:
    """(sN): fewer than N piercings, or certified stable"""
    p.registry.disk(disk_id)
    total = p.registry.total(disk_id)
    if total < n:
        return SnResult(True, SnVia.COUNT_BELOW_N, total)
    verdict = certify_stable(p, disk_id)
    if verdict.status is StabilityStatus.CERTIFIED:
        return SnResult(True, SnVia.STABLE_CERTIFICATE, total, verdict)
    return SnResult(False, None, total, verdict)
