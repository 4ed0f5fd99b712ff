"""
Case analysis against splitting tori.

A hypothesis (I, J) says some unknotted torus splits the link into L_I and
L_J. Each rule below either refutes a hypothesis with evidence that can be
replayed from the presentation alone, or reports why it could not.
"""

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import networkx as nx

from ..errors import HypothesisError
from .diagram import delete_components, linking_number, split_families
from .families import Orbit, side_with_zero, symmetry_group, symmetry_orbits
from .presentation import LinkPresentation
from .reidemeister import Move, SimplifyBudget, simplify
from .stability import SnResult, sn_check

logger = logging.getLogger(__name__)

CASE_LABELS = ("1.0.0", "1.0.2", "1.2.0", "1.2.2", "2.0.0", "2.2.0")
FREE_CASE_LABELS = frozenset({"1.0.0", "1.0.2", "2.0.0"})


@dataclass(frozen=True, order=True)
class ManualAssumption:
    basis: str
    statement: str


STANDING_PREMISE = ManualAssumption(
    "standing-premise",
    "The splitting torus meets every cross disk in a simple intersection pattern: "
    "innermost circles that are meridians of the J-side solid torus.",
)
DISK_DISJOINTNESS = ManualAssumption(
    "cross-disk-disjointness",
    "The focus disks acting as cross disks are mutually disjoint.",
)
BOUNDARY_PARALLEL = ManualAssumption(
    "boundary-parallel",
    "A torus avoiding every registered interior disk is boundary-parallel to a "
    "component of the link.",
)


class DiskRole(StrEnum):
    INTERIOR_I = "Interior_I"
    INTERIOR_J = "Interior_J"
    EXTERIOR_CROSS = "ExteriorCross"
    FREE_CROSS = "FreeCross"

    @property
    def is_cross(self) -> bool:
        return self in (DiskRole.EXTERIOR_CROSS, DiskRole.FREE_CROSS)


class Rule(StrEnum):
    CROSS_BOUND_4 = "CrossBound4"
    CROSS_BOUND_6 = "CrossBound6"
    COMPONENT_DISCARD = "ComponentDiscard"
    SYMMETRY_UNIQUENESS = "SymmetryUniqueness"
    CASE_EXHAUSTION = "CaseExhaustion"


@dataclass(frozen=True)
class BipartitionHypothesis:
    """Candidate splitting of the components into I and J.

    `case` and `core_linking` optionally pin the hypothetical cores:
    core_linking = (lk(C_i, beta_J), lk(C_j, beta_I)).
    """

    I: frozenset[int]  # noqa: N815
    J: frozenset[int]  # noqa: N815
    case: str | None = None

    def __post_init__(self):
        if not self.I or not self.J:
            raise HypothesisError("both sides of a bipartition must be nonempty")
        if self.I & self.J:
            raise HypothesisError(f"sides overlap in {sorted(self.I & self.J)}")
        if self.case is not None and self.case not in CASE_LABELS:
            raise HypothesisError(f"unknown case label {self.case}")

    @classmethod
    def of(
        cls, side: Iterable[int], n: int, case: str | None = None
    ) -> "BipartitionHypothesis":
        first = frozenset(side)
        if not first <= set(range(n)):
            raise HypothesisError(f"components outside 0..{n - 1}")
        return cls(first, frozenset(range(n)) - first, case)

    def check_cover(self, n: int) -> None:
        if self.I | self.J != frozenset(range(n)):
            raise HypothesisError("bipartition does not cover every component")

    @property
    def core_linking(self) -> tuple[int, int] | None:
        if self.case is None:
            return None
        _, b, c = self.case.split(".")
        return int(b), int(c)

    def side_of(self, component: int) -> frozenset[int]:
        return self.I if component in self.I else self.J

    def image(self, sigma: Sequence[int]) -> "BipartitionHypothesis":
        return BipartitionHypothesis(
            frozenset(sigma[c] for c in self.I),
            frozenset(sigma[c] for c in self.J),
            self.case,
        )

    def describe(self, p: LinkPresentation) -> dict[str, list[str]]:
        return {
            "I": [p.label(c) for c in sorted(self.I)],
            "J": [p.label(c) for c in sorted(self.J)],
        }


@dataclass(frozen=True)
class Refutation:
    rule: Rule
    evidence: dict[str, Any]
    assumptions: tuple[ManualAssumption, ...] = ()


@dataclass(frozen=True)
class Inconclusive:
    reason: str


Outcome = Refutation | Inconclusive


def disk_role(p: LinkPresentation, disk_id: str, h: BipartitionHypothesis) -> DiskRole:
    """Role of a disk relative to the side holding its boundary"""
    boundary = p.registry.disk(disk_id).boundary
    own = h.side_of(boundary)
    pierced = set(p.registry.piercers(disk_id))
    far = pierced - own
    if not far:
        return DiskRole.INTERIOR_I if own is h.I else DiskRole.INTERIOR_J
    if pierced & own:
        return DiskRole.FREE_CROSS
    return DiskRole.EXTERIOR_CROSS


def _piercer_labels(p: LinkPresentation, disk_id: str) -> dict[str, int]:
    return {p.label(c): k for c, k in sorted(p.registry.piercers(disk_id).items())}


def cross_bound_refute(
    p: LinkPresentation, h: BipartitionHypothesis, disks: Sequence[str] | None = None
) -> Outcome:
    """Exterior cross disks need 4 piercings, free cross disks 6"""
    for disk_id in disks or p.registry.disk_ids:
        disk = p.registry.disk(disk_id)
        if not disk.credible:
            continue
        role = disk_role(p, disk_id, h)
        total = p.registry.total(disk_id)
        rule = None
        if role is DiskRole.EXTERIOR_CROSS and total < 4:
            rule = Rule.CROSS_BOUND_4
        elif role is DiskRole.FREE_CROSS and total < 6:
            rule = Rule.CROSS_BOUND_6
        if rule is not None:
            return Refutation(
                rule,
                {
                    "disk": disk_id,
                    "role": role.value,
                    "total": total,
                    "piercers": _piercer_labels(p, disk_id),
                },
                (STANDING_PREMISE, DISK_DISJOINTNESS),
            )
    return Inconclusive("every cross disk meets its piercing bound")


def u_components(p: LinkPresentation, disks: Sequence[str]) -> list[frozenset[int]]:
    """Connected pieces of the link joined through the given disks"""
    graph = nx.Graph()
    graph.add_nodes_from(range(p.n_components))
    for disk_id in disks:
        boundary = p.registry.disk(disk_id).boundary
        for c in p.registry.piercers(disk_id):
            graph.add_edge(boundary, c)
    return sorted((frozenset(c) for c in nx.connected_components(graph)), key=min)


@dataclass
class DeletionCache:
    """Split parts after deleting component sets, shared across one analysis"""

    budget: SimplifyBudget
    results: dict[frozenset[int], tuple[list[frozenset[int]], tuple[Move, ...]]] = (
        field(default_factory=dict)
    )

    def split_after(
        self, p: LinkPresentation, deleted: frozenset[int]
    ) -> tuple[list[frozenset[int]], tuple[Move, ...]]:
        if deleted not in self.results:
            survivors = [c for c in range(p.n_components) if c not in deleted]
            result = simplify(delete_components(p.diagram, deleted), self.budget)
            parts = [
                frozenset(survivors[k] for k in part)
                for part in split_families(result.diagram)
            ]
            self.results[deleted] = (sorted(parts, key=min), result.trace)
        return self.results[deleted]


def discard_refute(
    p: LinkPresentation,
    h: BipartitionHypothesis,
    budget: SimplifyBudget | None = None,
    disks: Sequence[str] | None = None,
    max_deleted: int = 1,
    cache: DeletionCache | None = None,
) -> Outcome:
    """Delete U-components on one side; a far-side U-component must not split off.

    Both sides are tried as the deleting side.
    """
    disks = list(disks or p.registry.disk_ids)
    if not any(disk_role(p, d, h).is_cross for d in disks):
        return Inconclusive("no cross disk under the hypothesis")
    cache = cache or DeletionCache(budget or SimplifyBudget())
    pieces = u_components(p, disks)
    for near, far in ((h.I, h.J), (h.J, h.I)):
        deletable = [k for k in pieces if k <= near]
        watched = [k for k in pieces if k <= far]
        if not deletable or not watched:
            continue
        for size in range(1, max_deleted + 1):
            for combo in itertools.combinations(deletable, size):
                deleted = frozenset().union(*combo)
                if deleted == near:
                    continue
                parts, trace = cache.split_after(p, deleted)
                remaining = near - deleted
                for piece in watched:
                    reach = frozenset().union(*(part for part in parts if part & piece))
                    if not reach & remaining:
                        logger.debug(
                            "deleting %s splits off %s", sorted(deleted), sorted(piece)
                        )
                        return Refutation(
                            Rule.COMPONENT_DISCARD,
                            {
                                "deleted": sorted(deleted),
                                "split_off": sorted(piece),
                                "partition": [sorted(part) for part in parts],
                                "trace": [
                                    {"kind": m.kind.value, "site": list(m.site)}
                                    for m in trace
                                ],
                            },
                            (STANDING_PREMISE, DISK_DISJOINTNESS),
                        )
    return Inconclusive("no deletion splits a far-side U-component away")


def quadruple(
    h: BipartitionHypothesis, sigma: Sequence[int]
) -> dict[str, list[int]]:
    moved = h.image(sigma)
    return {
        "I&I'": sorted(h.I & moved.I),
        "I&J'": sorted(h.I & moved.J),
        "J&I'": sorted(h.J & moved.I),
        "J&J'": sorted(h.J & moved.J),
    }


def symmetry_refute(p: LinkPresentation, h: BipartitionHypothesis) -> Outcome:
    """Two splittings related by a symmetry must nest; all four overlaps forbid it"""
    group = symmetry_group(p.symmetries, p.n_components)
    if len(group) == 1:
        return Inconclusive("identity-only symmetry group")
    for sigma in group:
        overlaps = quadruple(h, sigma)
        if all(overlaps.values()):
            return Refutation(
                Rule.SYMMETRY_UNIQUENESS,
                {
                    "permutation": list(sigma),
                    "quadruple": overlaps,
                    "cited": "splitting tori of a link are disjoint up to isotopy",
                },
            )
    return Inconclusive("every symmetric image nests with the hypothesis")


def _far_piercings(
    p: LinkPresentation, disk_id: str, h: BipartitionHypothesis
) -> dict[int, int]:
    own = h.side_of(p.registry.disk(disk_id).boundary)
    return {c: k for c, k in p.registry.piercers(disk_id).items() if c not in own}


def case6_classify(
    p: LinkPresentation, disk_id: str, h: BipartitionHypothesis
) -> frozenset[str]:
    """Admissible core-linking cases a.b.c for a cross disk with 4 far piercings.

    a counts pierced far components (1 or more); b = lk(C_i, beta_far) may be 2
    only when the near side is a single component, c likewise for the far side.

    Raises:
        HypothesisError: if the disk is not a cross disk with exactly 4 far piercings
    """
    role = disk_role(p, disk_id, h)
    far = _far_piercings(p, disk_id, h)
    if not role.is_cross or sum(far.values()) != 4:
        raise HypothesisError(
            f"{disk_id} is not a cross disk with exactly four far-side piercings"
        )
    own = h.side_of(p.registry.disk(disk_id).boundary)
    other = h.J if own is h.I else h.I
    a = "1" if len(far) == 1 else "2"
    labels = {label for label in CASE_LABELS if label.startswith(a)}
    if len(own) > 1:
        labels = {label for label in labels if label.split(".")[1] == "0"}
    if len(other) > 1:
        labels = {label for label in labels if label.split(".")[2] == "0"}
    if role is DiskRole.FREE_CROSS:
        labels &= FREE_CASE_LABELS
    return frozenset(labels)


def _classifiable(
    p: LinkPresentation, disks: Sequence[str], h: BipartitionHypothesis
) -> list[str]:
    return [
        d
        for d in disks
        if disk_role(p, d, h).is_cross and sum(_far_piercings(p, d, h).values()) == 4
    ]


def case_exhaustion_refute(
    p: LinkPresentation, h: BipartitionHypothesis, disks: Sequence[str] | None = None
) -> Outcome:
    """A hypothesis pinned to a case that no focus cross disk admits"""
    if h.case is None:
        return Inconclusive("hypothesis carries no case label")
    table = {
        d: sorted(case6_classify(p, d, h))
        for d in _classifiable(p, disks or p.registry.disk_ids, h)
    }
    if not table:
        return Inconclusive("no cross disk with four far-side piercings")
    if all(h.case not in labels for labels in table.values()):
        return Refutation(
            Rule.CASE_EXHAUSTION,
            {"case": h.case, "admitted": table},
            (STANDING_PREMISE, DISK_DISJOINTNESS),
        )
    return Inconclusive(f"case {h.case} is admitted")


def refute_hypothesis(
    p: LinkPresentation,
    h: BipartitionHypothesis,
    budget: SimplifyBudget | None = None,
    disks: Sequence[str] | None = None,
    max_deleted: int = 1,
    cache: DeletionCache | None = None,
) -> tuple[Outcome, list[str]]:
    """Try every rule in order; return the first refutation or all reasons"""
    reasons = []
    attempts = (
        lambda: case_exhaustion_refute(p, h, disks),
        lambda: cross_bound_refute(p, h, disks),
        lambda: discard_refute(p, h, budget, disks, max_deleted, cache),
        lambda: symmetry_refute(p, h),
    )
    for attempt in attempts:
        outcome = attempt()
        if isinstance(outcome, Refutation):
            return outcome, reasons
        reasons.append(outcome.reason)
    return Inconclusive("; ".join(reasons)), reasons


# -- orbit analysis ---------------------------------------------------------


class SPrimeVerdict(StrEnum):
    SPRIME_MODULO_ASSUMPTIONS = "SPrimeModuloAssumptions"
    INCOMPLETE = "Incomplete"


@dataclass(frozen=True)
class OrbitResult:
    representative: BipartitionHypothesis
    members: tuple[tuple[int, ...], ...]
    refutation: Refutation | None = None
    via: BipartitionHypothesis | None = None
    transport: tuple[int, ...] | None = None
    reason: str = ""
    cases: dict[str, list[str]] = field(default_factory=dict)
    obligations: tuple[str, ...] = ()

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def refuted(self) -> bool:
        return self.refutation is not None


@dataclass(frozen=True)
class CaseAnalysis:
    orbits: tuple[OrbitResult, ...]
    verdict: SPrimeVerdict
    assumptions: tuple[ManualAssumption, ...]
    focus: tuple[str, ...]

    @property
    def unresolved(self) -> list[OrbitResult]:
        return [o for o in self.orbits if not o.refuted]


def obligation_for(case: str, disk_id: str) -> str:
    """Hand-proof obligation left open by an unresolved case"""
    if case in ("1.0.0", "1.2.0"):
        return (
            f"case {case}: delete both ears of {disk_id} and exhibit an incredible "
            f"circle for the remaining complex"
        )
    if case in ("2.0.0", "2.2.0"):
        return (
            f"case {case}: delete one ear of {disk_id} and exhibit an incredible "
            f"circle for the remaining complex"
        )
    return (
        f"case {case}: show the far-side core cannot be isotoped into a neighbourhood "
        f"of the single far component met by {disk_id}"
    )


def _transport(
    group: Sequence[tuple[int, ...]],
    start: tuple[int, ...],
    target: tuple[int, ...],
    n: int,
) -> tuple[int, ...]:
    for sigma in group:
        if side_with_zero({sigma[c] for c in start}, n) == target:
            return sigma
    raise HypothesisError("orbit member is not reachable by a declared symmetry")


def analyze_sprime(
    p: LinkPresentation,
    budget: SimplifyBudget | None = None,
    focus: Sequence[str] | None = None,
    max_deleted: int = 1,
) -> CaseAnalysis:
    """Refute every symmetry class of bipartitions, or say what is left open"""
    n = p.n_components
    disks = p.focus(focus)
    group = symmetry_group(p.symmetries, n)
    cache = DeletionCache(budget or SimplifyBudget())
    results = []
    for orbit in symmetry_orbits(p):
        results.append(_analyze_orbit(p, orbit, group, disks, max_deleted, cache))

    assumptions = sorted(
        {a for r in results if r.refutation for a in r.refutation.assumptions}
    )
    verdict = (
        SPrimeVerdict.SPRIME_MODULO_ASSUMPTIONS
        if all(r.refuted for r in results)
        else SPrimeVerdict.INCOMPLETE
    )
    return CaseAnalysis(tuple(results), verdict, tuple(assumptions), disks)


def _members_to_try(
    p: LinkPresentation, orbit: Orbit, disks: Sequence[str]
) -> list[tuple[int, ...]]:
    """Members that split the first focus disk from its first piercer go first"""
    members = sorted(orbit.members)
    if not disks:
        return members
    piercers = sorted(p.registry.piercers(disks[0]))
    if not piercers:
        return members
    boundary, first = p.registry.disk(disks[0]).boundary, piercers[0]
    return sorted(members, key=lambda m: (boundary in m) == (first in m))


def _analyze_orbit(
    p: LinkPresentation,
    orbit: Orbit,
    group: Sequence[tuple[int, ...]],
    disks: Sequence[str],
    max_deleted: int,
    cache: DeletionCache,
) -> OrbitResult:
    n = p.n_components
    rep = BipartitionHypothesis.of(orbit.representative, n)
    members = orbit.members
    outcome: Outcome = Inconclusive("no member tried")
    for member in _members_to_try(p, orbit, disks):
        hyp = BipartitionHypothesis.of(member, n)
        found, _ = refute_hypothesis(p, hyp, cache.budget, disks, max_deleted, cache)
        if isinstance(found, Refutation):
            sigma = (
                tuple(range(n))
                if member == orbit.representative
                else _transport(group, orbit.representative, member, n)
            )
            return OrbitResult(rep, members, found, hyp, sigma)
        if member == orbit.representative:
            outcome = found

    cases = {d: sorted(case6_classify(p, d, rep)) for d in _classifiable(p, disks, rep)}
    obligations = tuple(
        obligation_for(c, d) for d, labels in cases.items() for c in labels
    )
    return OrbitResult(
        rep, members, reason=outcome.reason, cases=cases, obligations=obligations
    )


# -- interior disks and untiedness -------------------------------------------


@dataclass(frozen=True)
class DiskCheck:
    disk: str
    role: DiskRole | None
    sn: SnResult


@dataclass(frozen=True)
class InteriorReport:
    hypothesis: BipartitionHypothesis
    checks: tuple[DiskCheck, ...]
    violations: tuple[str, ...]
    unknown: tuple[str, ...]
    disjoint: bool
    obligations: tuple[ManualAssumption, ...]

    @property
    def passed(self) -> bool:
        return not self.violations and not self.unknown and self.disjoint


def interior_only_hypotheses(
    p: LinkPresentation,
    interior: Iterable[int],
    exterior: Iterable[int],
    disks: Sequence[str] | None = None,
) -> InteriorReport:
    """Machine checks for the interior-disk criterion; the torus step stays manual.

    Raises:
        HypothesisError: for an empty or overlapping side
    """
    h = BipartitionHypothesis(frozenset(interior), frozenset(exterior))
    h.check_cover(p.n_components)
    checks, violations, unknown = [], [], []
    for disk_id in disks or p.registry.disk_ids:
        role = disk_role(p, disk_id, h)
        sn = sn_check(p, disk_id, 8)
        checks.append(DiskCheck(disk_id, role, sn))
        if role.is_cross:
            violations.append(f"{disk_id} is a {role.value} disk")
        if not sn.holds:
            unknown.append(disk_id)
    return InteriorReport(
        h,
        tuple(checks),
        tuple(violations),
        tuple(unknown),
        p.registry.disjoint,
        (BOUNDARY_PARALLEL,),
    )


class UntiedVerdict(StrEnum):
    UNTIED_MODULO_ASSUMPTIONS = "UntiedModuloAssumptions"
    HYPOTHESES_INCOMPLETE = "HypothesesIncomplete"


@dataclass(frozen=True)
class UntiedReport:
    threshold: int
    checks: tuple[DiskCheck, ...]
    regularity: dict[str, bool]
    witness: str | None
    verdict: UntiedVerdict
    missing: tuple[str, ...]

    @property
    def assumptions(self) -> tuple[ManualAssumption, ...]:
        if self.witness is None:
            return ()
        return (ManualAssumption("complement-witness", self.witness),)


def untied_threshold(p: LinkPresentation) -> int:
    """7 for a two-component link with |lk| = 1, else 8"""
    if p.n_components == 2 and abs(linking_number(p.diagram, 0, 1)) == 1:
        return 7
    return 8


def untied_check(p: LinkPresentation, witness: str | None = None) -> UntiedReport:
    threshold = untied_threshold(p)
    checks = tuple(
        DiskCheck(d, None, sn_check(p, d, threshold)) for d in p.registry.disk_ids
    )
    missing = [c.disk for c in checks if not c.sn.holds]
    regularity = dict(p.meta.regularity)
    if not all(regularity.values()):
        missing.extend(f"regularity:{k}" for k, ok in regularity.items() if not ok)
    if witness is None:
        missing.append("complement witness")
    verdict = (
        UntiedVerdict.UNTIED_MODULO_ASSUMPTIONS
        if not missing
        else UntiedVerdict.HYPOTHESES_INCOMPLETE
    )
    return UntiedReport(threshold, checks, regularity, witness, verdict, tuple(missing))
