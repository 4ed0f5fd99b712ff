"""
Link presentations: a diagram plus the registered spanning disks, the words
each component reads off those disks, and declared symmetries.
"""

from collections import Counter
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

from ..errors import RegistryError, RegistryErrorKind
from .diagram import LinkDiagram, automorphism, linking_matrix, validate
from .words import CyclicWord, Letter


class Side(StrEnum):
    POS = "Pos"
    NEG = "Neg"

    def opposite(self) -> "Side":
        return Side.NEG if self is Side.POS else Side.POS


@dataclass(frozen=True, slots=True)
class ClaspPattern:
    """Declared clasping of the arcs a single piercing component is cut into.

    Arcs are numbered 1..2m around the component; each constraint (i, partners)
    says arc i is met at least twice or all of its partners are.
    """

    arcs: int
    constraints: tuple[tuple[int, tuple[int, ...]], ...]

    @classmethod
    def chain(cls, m: int) -> "ClaspPattern":
        """Odd arcs clasp both neighbours"""
        arcs = 2 * m
        return cls(
            arcs=arcs,
            constraints=tuple(
                (i, ((i - 2) % arcs + 1, i % arcs + 1)) for i in range(1, arcs + 1, 2)
            ),
        )


@dataclass(frozen=True, slots=True)
class Disk:
    id: str
    boundary: int
    positive_side: Side = Side.POS
    credible: bool = True
    clasp: ClaspPattern | None = None


@dataclass(frozen=True, slots=True)
class Piercing:
    disk: str
    sign: int


@dataclass(frozen=True)
class DiskRegistry:
    """Registered disks and, per component, its ordered piercings"""

    disks: tuple[Disk, ...] = ()
    piercings: Mapping[int, tuple[Piercing, ...]] = field(default_factory=dict)
    disjoint: bool = True

    def disk(self, disk_id: str) -> Disk:
        for disk in self.disks:
            if disk.id == disk_id:
                return disk
        raise RegistryError(
            RegistryErrorKind.UNREGISTERED_DISK, f"disk {disk_id} is not registered"
        )

    @property
    def disk_ids(self) -> list[str]:
        return [d.id for d in self.disks]

    def along(self, component: int) -> tuple[Piercing, ...]:
        return self.piercings.get(component, ())

    def piercers(self, disk_id: str) -> Counter[int]:
        """Component to number of times it pierces the disk"""
        counts: Counter[int] = Counter()
        for component, seq in self.piercings.items():
            for piercing in seq:
                if piercing.disk == disk_id:
                    counts[component] += 1
        return counts

    def total(self, disk_id: str) -> int:
        return sum(self.piercers(disk_id).values())

    def signed_sum(self, disk_id: str, component: int) -> int:
        return sum(p.sign for p in self.along(component) if p.disk == disk_id)


@dataclass(frozen=True)
class FamilyMeta:
    family: str = "custom"
    params: Mapping[str, Any] = field(default_factory=dict)
    labels: tuple[str, ...] = ()
    count_formula: str = ""
    focus_disks: tuple[str, ...] | None = None
    regularity: Mapping[str, bool] = field(default_factory=dict)


@dataclass(frozen=True)
class LinkPresentation:
    diagram: LinkDiagram
    registry: DiskRegistry = field(default_factory=DiskRegistry)
    words: Mapping[int, CyclicWord] = field(default_factory=dict)
    symmetries: tuple[tuple[int, ...], ...] = ()
    meta: FamilyMeta = field(default_factory=FamilyMeta)

    @property
    def n_components(self) -> int:
        return self.diagram.n_components

    def label(self, component: int) -> str:
        if self.meta.labels:
            return self.meta.labels[component]
        return f"C{component}"

    def focus(self, requested: Sequence[str] | None = None) -> tuple[str, ...]:
        """Disks making up the analysed disk system"""
        if requested:
            for disk_id in requested:
                self.registry.disk(disk_id)
            return tuple(requested)
        if self.meta.focus_disks:
            return tuple(self.meta.focus_disks)
        return tuple(self.registry.disk_ids)


def word_from_piercings(p: LinkPresentation, c: int) -> CyclicWord:
    """Read the piercings along component c as a cyclic word"""
    p.diagram.check_component(c)
    known = set(p.registry.disk_ids)
    letters = []
    for piercing in p.registry.along(c):
        if piercing.disk not in known:
            raise RegistryError(
                RegistryErrorKind.UNREGISTERED_DISK,
                f"component {c} pierces unregistered disk {piercing.disk}",
            )
        letters.append(Letter(piercing.disk, piercing.sign))
    return CyclicWord(letters)


def with_words(p: LinkPresentation) -> LinkPresentation:
    """Attach designated words recomputed from the registry"""
    words = {c: word_from_piercings(p, c) for c in range(p.n_components)}
    return LinkPresentation(p.diagram, p.registry, words, p.symmetries, p.meta)


def validate_presentation(p: LinkPresentation) -> list[str]:
    """Cross-check diagram, registry, words and symmetries.

    Returns:
        Human-readable problems; empty when consistent.
    """
    problems = [str(e) for e in validate(p.diagram)]
    if problems:
        return problems
    n = p.n_components
    lk = linking_matrix(p.diagram)
    ids = p.registry.disk_ids
    if len(set(ids)) != len(ids):
        problems.append(f"{RegistryErrorKind.DUPLICATE_DISK}: disk ids repeat")

    for disk in p.registry.disks:
        if not 0 <= disk.boundary < n:
            problems.append(f"disk {disk.id} has boundary {disk.boundary} out of range")
            continue
        piercers = p.registry.piercers(disk.id)
        if disk.boundary in piercers:
            problems.append(
                f"{RegistryErrorKind.SELF_PIERCING}: {disk.id} pierces its boundary"
            )
        for c in range(n):
            if c == disk.boundary:
                continue
            if p.registry.signed_sum(disk.id, c) != lk[c, disk.boundary]:
                problems.append(
                    f"{RegistryErrorKind.LINKING_MISMATCH}: "
                    f"{disk.id} along component {c}"
                )

    for c in range(n):
        try:
            word = word_from_piercings(p, c)
        except RegistryError as e:
            problems.append(str(e))
            continue
        if p.words.get(c, CyclicWord()) != word:
            problems.append(f"designated word of component {c} disagrees with registry")

    for sigma in p.symmetries:
        if sorted(sigma) != list(range(n)):
            problems.append(f"symmetry {list(sigma)} is not a permutation")
            continue
        if automorphism(p.diagram, sigma) is None:
            problems.append(
                f"symmetry {list(sigma)} is not an automorphism of the diagram"
            )
            continue
        for disk_id in ids:
            image = transport_disk(p, disk_id, sigma)
            expected = Counter(
                {sigma[c]: k for c, k in p.registry.piercers(disk_id).items()}
            )
            if image is None or p.registry.piercers(image) != expected:
                problems.append(
                    f"symmetry {list(sigma)} does not carry {disk_id} "
                    "to a matching disk"
                )
                break
    return problems


def transport_disk(
    p: LinkPresentation, disk_id: str, sigma: Sequence[int]
) -> str | None:
    """Disk whose boundary is the image of disk_id's boundary under sigma"""
    target = sigma[p.registry.disk(disk_id).boundary]
    for disk in p.registry.disks:
        if disk.boundary == target:
            return disk.id
    return None
