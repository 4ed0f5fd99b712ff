"""
Generators for the Brunnian link families and their symmetry orbits.

Milnor and W are closed pure braids around one wanderer, Lamp a hooked circle.
The ring families (deBrunner, BrunnChain, TorusGrid, Tube, Carpet) are
necklaces of lassoed bands laid out in the ring order of their figure; joint
kinds mark row ends. Every registry is read off its construction and the only
symmetries declared are ring rotations that carry the diagram onto itself.
"""

import itertools
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum

from ..errors import FamilyParameterError
from .braids import (
    Wrap,
    WrapWord,
    bracket,
    left_normed,
    right_normed,
    wrap_closure,
)
from .bands import Joint, Necklace, necklace
from .diagram import LinkDiagram, Passage
from .presentation import (
    ClaspPattern,
    Disk,
    DiskRegistry,
    FamilyMeta,
    LinkPresentation,
    Piercing,
    with_words,
)

REGULARITY = {
    "isolated_intersections": True,
    "no_triple_points": True,
    "transverse_boundaries": True,
}


class Family(StrEnum):
    LAMP = "lamp"
    DEBRUNNER = "debrunner"
    W = "w"
    TORUSGRID = "torusgrid"
    TUBE = "tube"
    CARPET = "carpet"
    BRUNNCHAIN = "brunnchain"
    MILNOR = "milnor"


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int | None = None
    m: int | None = None
    p: int | None = None
    indices: tuple[int, ...] = ()

    @classmethod
    def parse(
        cls,
        family: str,
        n: int | None = None,
        m: int | None = None,
        p: int | None = None,
        indices: Sequence[int] = (),
    ) -> "FamilySpec":
        try:
            fam = Family(family.lower())
        except ValueError as e:
            raise FamilyParameterError(f"unknown family {family!r}") from e
        spec = cls(fam, n, m, p, tuple(indices))
        spec.check()
        return spec

    def _need(self, name: str, low: int) -> int:
        value = getattr(self, name)
        if value is None or value < low:
            raise FamilyParameterError(
                f"{self.family.value} needs --{name} >= {low}, got {value}"
            )
        return value

    def check(self) -> None:
        """Raise FamilyParameterError when parameters are out of range"""
        match self.family:
            case Family.LAMP:
                if not self.indices or len(self.indices) % 2:
                    raise FamilyParameterError(
                        "lamp needs an even, nonempty index list"
                    )
                if any(k % 2 == 0 for k in self.indices):
                    raise FamilyParameterError("lamp indices must all be odd")
            case Family.DEBRUNNER:
                self._need("n", 2)
            case Family.W | Family.MILNOR | Family.BRUNNCHAIN:
                self._need("n", 3)
            case Family.TORUSGRID:
                self._need("m", 1)
                self._need("n", 1)
            case Family.TUBE:
                self._need("m", 1)
                self._need("n", 2)
            case Family.CARPET:
                m = self._need("m", 1)
                n = self._need("n", 2)
                self._need("p", 1)
                if m >= n:
                    raise FamilyParameterError("carpet needs m < n")

    @property
    def params(self) -> dict[str, object]:
        if self.family is Family.LAMP:
            return {"indices": list(self.indices)}
        named = (("m", self.m), ("n", self.n), ("p", self.p))
        return {k: v for k, v in named if v is not None}


def component_count(spec: FamilySpec) -> int:
    match spec.family:
        case Family.LAMP:
            return 2
        case Family.TORUSGRID:
            return 2 * spec.m * spec.n
        case Family.TUBE:
            return spec.m * spec.n
        case Family.CARPET:
            rows = spec.n - spec.m + 1
            cells = sum(spec.n - r + 1 for r in range(1, rows + 1))
            return cells + max(spec.p - spec.n, 0)
        case _:
            return spec.n


# -- diagrams ---------------------------------------------------------------


def _reorder(d: LinkDiagram, position_of: Sequence[int]) -> LinkDiagram:
    """Component c becomes the strand that sat at position_of[c]"""
    return LinkDiagram(
        components=tuple(d.components[pos] for pos in position_of), signs=d.signs
    )


def lamp_diagram(indices: Sequence[int]) -> LinkDiagram:
    """C1 a round circle; C2 weaves hooks through it.

    Hook i leaves the disk across C1, runs outside and comes back. Even hooks
    (0-based) pass over C1, odd ones under. The return leg of hook i twists
    |indices[i]| times with the outgoing leg of hook i+1, and the outer arcs
    of neighbouring hooks cross once, the later hook on top.
    """
    h = len(indices)
    ids = itertools.count()
    exits = [next(ids) for _ in range(h)]
    entries = [next(ids) for _ in range(h)]
    twists = [[next(ids) for _ in range(abs(k))] for k in indices]
    outer = [next(ids) for _ in range(h)]
    turn = [1 if k > 0 else -1 for k in indices]

    signs: dict[int, int] = {}
    circle: list[Passage] = []
    weave: list[Passage] = []
    for i in range(h):
        high = i % 2 == 0
        signs[exits[i]] = 1 if high else -1
        signs[entries[i]] = -1 if high else 1
        circle += [Passage(exits[i], not high), Passage(entries[i], not high)]
        for cid in twists[i]:
            signs[cid] = turn[i]
        signs[outer[i]] = 1

        prev = (i - 1) % h
        weave.append(Passage(exits[i], high))
        for j, cid in enumerate(twists[prev]):
            weave.append(Passage(cid, (j % 2 == 0) != (turn[prev] > 0)))
        weave.append(Passage(outer[prev], True))
        weave.append(Passage(outer[i], False))
        for j in reversed(range(len(twists[i]))):
            weave.append(Passage(twists[i][j], (j % 2 == 0) == (turn[i] > 0)))
        weave.append(Passage(entries[i], high))
    return LinkDiagram(components=(tuple(circle), tuple(weave)), signs=signs)


# -- registries -------------------------------------------------------------


def _wrap_registry(n: int, word: WrapWord, ring_of: dict[int, int]) -> DiskRegistry:
    """Honest registry for a single wanderer: letter k pierces disk D_ring once"""
    disks = tuple(Disk(f"D{c}", c) for c in sorted(ring_of.values()))
    along = tuple(Piercing(f"D{ring_of[w.ring]}", w.sign) for w in word)
    return DiskRegistry(disks, {0: along}, disjoint=True)


def _band_registry(beads: Necklace, labels: Sequence[str]) -> DiskRegistry:
    """Strip disks of a necklace; neighbouring strips cross in ribbon arcs"""
    name = [f"D{label[1:]}" for label in labels]
    disks = tuple(Disk(name[c], c) for c in range(len(labels)))
    piercings = {
        c: tuple(Piercing(name[disk], sign) for disk, sign in seq)
        for c, seq in beads.piercings.items()
    }
    return DiskRegistry(disks, piercings, disjoint=False)


def _rotations(joints: Sequence[Joint]) -> tuple[tuple[int, ...], ...]:
    """Generator of the ring rotations that keep every joint's kind"""
    n = len(joints)
    for r in range(1, n):
        if n % r == 0 and all(joints[k] == joints[(k + r) % n] for k in range(n)):
            return (tuple((c + r) % n for c in range(n)),)
    return ()


# -- families ---------------------------------------------------------------


def _milnor_like(n: int, word_of: Callable[[list[WrapWord]], WrapWord]) -> tuple:
    # wanderer C0 outermost at position n-1; ring C_k at position k-1
    gens = [(Wrap(n - 1, k - 1, 1),) for k in range(1, n)]
    word = word_of(gens)
    diagram = _reorder(wrap_closure(n, word), [n - 1] + list(range(n - 1)))
    registry = _wrap_registry(n, word, {k - 1: k for k in range(1, n)})
    labels = tuple(f"C{c}" for c in range(n))
    return diagram, registry, labels


def _w_word(gens: list[WrapWord]) -> WrapWord:
    if len(gens) == 2:
        return bracket(*gens)
    if len(gens) == 3:
        return left_normed(gens)
    return bracket(bracket(gens[0], gens[1]), right_normed(gens[2:]))


def _lamp(indices: Sequence[int]) -> tuple[LinkDiagram, DiskRegistry]:
    """C1 bounds D1, met by C2 once per hook with alternating signs"""
    along = tuple(Piercing("D1", 1 if i % 2 == 0 else -1) for i in range(len(indices)))
    registry = DiskRegistry(
        (Disk("D1", 0, clasp=ClaspPattern.chain(len(indices) // 2)),), {1: along}
    )
    return lamp_diagram(indices), registry


def _carpet(m: int, n: int, p: int) -> tuple[list[str], list[int]]:
    """Labels in ring order, and the ring positions closing a row"""
    rows = n - m + 1
    cells = [(r, c) for r in range(1, rows + 1) for c in range(1, n - r + 2)]
    labels = [f"C{r}_{c}" for r, c in cells]
    ends = [k for k, (r, c) in enumerate(cells) if c == n - r + 1]
    extras = max(p - n, 0)
    spare = [f"C'{r}_{c}" for r, c in cells if r >= 2 and (r + 1, c) not in cells]
    spare += [f"C'{k}" for k in range(len(cells), len(cells) + extras)]
    return labels + spare[:extras], ends


def _ring_family(spec: FamilySpec) -> tuple[list[str], list[Joint], tuple[str, ...]]:
    """Ring-ordered labels, joint kinds and focus disk of a chain family"""
    plain, crossed = Joint.PLAIN, Joint.CROSSED
    match spec.family:
        case Family.BRUNNCHAIN | Family.DEBRUNNER:
            kind = crossed if spec.family is Family.DEBRUNNER else plain
            return [f"C{k}" for k in range(1, spec.n + 1)], [kind] * spec.n, ("D2",)
        case Family.TORUSGRID:
            # rings run down each column, then on into the next
            rows = 2 * spec.m
            count = rows * spec.n
            labels = [f"C{k % rows + 1}_{k // rows + 1}" for k in range(count)]
            return labels, [plain] * count, ("D2_1",)
        case Family.TUBE:
            count = spec.m * spec.n
            labels = [f"C{k // spec.n + 1}_{k % spec.n + 1}" for k in range(count)]
            joints = [
                crossed if (k + 1) % spec.n == 0 else plain for k in range(count)
            ]
            return labels, joints, ("D1_2",)
        case Family.CARPET:
            labels, ends = _carpet(spec.m, spec.n, spec.p)
            last = len(labels) - 1
            joints = [
                crossed if k in ends or k == last else plain for k in range(len(labels))
            ]
            return labels, joints, ("D1_1",)
    raise FamilyParameterError(f"{spec.family.value} is not a ring family")


def generate(spec: FamilySpec) -> LinkPresentation:
    """Build the presentation of one family member.

    Raises:
        FamilyParameterError: for out-of-range parameters
    """
    spec.check()
    symmetries: tuple[tuple[int, ...], ...] = ()
    focus: tuple[str, ...] | None = None

    match spec.family:
        case Family.MILNOR:
            diagram, registry, labels = _milnor_like(spec.n, left_normed)
        case Family.W:
            diagram, registry, labels = _milnor_like(spec.n, _w_word)
        case Family.LAMP:
            diagram, registry = _lamp(spec.indices)
            labels = ("C1", "C2")
        case Family.DEBRUNNER if spec.n == 2:
            diagram, registry = _lamp((1, 1, 1, 1))
            labels = ("C1", "C2")
        case _:
            labels, joints, focus = _ring_family(spec)
            beads = necklace(joints)
            diagram = beads.diagram
            registry = _band_registry(beads, labels)
            symmetries = _rotations(joints)

    meta = FamilyMeta(
        family=spec.family.value,
        params=spec.params,
        labels=tuple(labels),
        count_formula=_FORMULAS[spec.family],
        focus_disks=focus,
        regularity=dict(REGULARITY),
    )
    return with_words(LinkPresentation(diagram, registry, {}, symmetries, meta))


_FORMULAS = {
    Family.LAMP: "2",
    Family.DEBRUNNER: "n",
    Family.W: "n",
    Family.MILNOR: "n",
    Family.BRUNNCHAIN: "n",
    Family.TORUSGRID: "2mn",
    Family.TUBE: "mn",
    Family.CARPET: "sum(n-r+1 for r in 1..n-m+1) + max(p-n, 0)",
}


# -- symmetry orbits --------------------------------------------------------


Side = tuple[int, ...]


@dataclass(frozen=True)
class Orbit:
    """Unordered bipartitions related by symmetry, each given by its side holding 0"""

    representative: Side
    members: tuple[Side, ...]


def symmetry_group(
    generators: Sequence[Sequence[int]], n: int
) -> list[tuple[int, ...]]:
    """All permutations generated, identity included, sorted"""
    identity = tuple(range(n))
    group = {identity}
    frontier = [identity]
    gens = [tuple(g) for g in generators]
    while frontier:
        current = frontier.pop()
        for g in gens:
            composed = tuple(g[current[c]] for c in range(n))
            if composed not in group:
                group.add(composed)
                frontier.append(composed)
    return sorted(group)


def side_with_zero(side: frozenset[int] | set[int], n: int) -> Side:
    if 0 in side:
        return tuple(sorted(side))
    return tuple(sorted(set(range(n)) - set(side)))


def all_bipartitions(n: int) -> list[Side]:
    sides = []
    for mask in range((1 << (n - 1)) - 1):
        sides.append((0,) + tuple(i + 1 for i in range(n - 1) if mask >> i & 1))
    return sorted(sides)


def symmetry_orbits(
    p: LinkPresentation, parts: Sequence[Side] | None = None
) -> list[Orbit]:
    """One orbit per class of unordered nontrivial bipartitions"""
    n = p.n_components
    group = symmetry_group(p.symmetries, n)
    remaining = set(parts if parts is not None else all_bipartitions(n))
    orbits = []
    while remaining:
        start = min(remaining)
        members = {side_with_zero({sigma[c] for c in start}, n) for sigma in group}
        remaining -= members
        orbits.append(Orbit(min(members), tuple(sorted(members))))
    return orbits
