"""
Oriented link diagrams in passage form.

A diagram is a list of components; each component is the cyclic sequence of
crossings it meets, marked over or under. Crossing signs are stored once per
crossing. A component with no passages is a crossing-free circle.

Sign convention: a crossing is +1 when the over-strand direction crossed with
the under-strand direction (2D cross product) is positive, i.e. the usual
right-handed crossing.
"""

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx
import numpy as np

from ..errors import DiagramError, DiagramErrorKind


@dataclass(frozen=True, slots=True)
class Passage:
    """One visit of a component to a crossing"""

    crossing: int
    over: bool


@dataclass(frozen=True, slots=True)
class Crossing:
    id: int
    sign: int
    over_component: int
    over_position: int
    under_component: int
    under_position: int


@dataclass(frozen=True)
class LinkDiagram:
    """Immutable oriented link diagram.

    Args:
        components: Cyclic passage sequences, one per component
        signs: Crossing id to sign (+1 or -1)
    """

    components: tuple[tuple[Passage, ...], ...]
    signs: Mapping[int, int] = field(default_factory=dict)

    @classmethod
    def build(
        cls,
        components: Iterable[Iterable[Passage | tuple[int, bool]]],
        signs: Mapping[int, int],
    ) -> "LinkDiagram":
        """Build a diagram from nested iterables, coercing plain tuples"""
        comps = tuple(
            tuple(p if isinstance(p, Passage) else Passage(*p) for p in comp)
            for comp in components
        )
        return cls(components=comps, signs=dict(sorted(signs.items())))

    @classmethod
    def unlink(cls, n: int) -> "LinkDiagram":
        """Crossing-free diagram of n circles"""
        return cls(components=tuple(() for _ in range(n)), signs={})

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def crossing_count(self) -> int:
        return len(self.signs)

    @cached_property
    def crossings(self) -> dict[int, Crossing]:
        """Crossing table derived from the passages (valid diagrams only)"""
        over: dict[int, tuple[int, int]] = {}
        under: dict[int, tuple[int, int]] = {}
        for ci, comp in enumerate(self.components):
            for pos, passage in enumerate(comp):
                target = over if passage.over else under
                target[passage.crossing] = (ci, pos)
        table = {}
        for cid, sign in self.signs.items():
            if cid not in over or cid not in under:
                raise DiagramError(
                    DiagramErrorKind.DANGLING_CROSSING, f"crossing {cid} is incomplete"
                )
            table[cid] = Crossing(cid, sign, *over[cid], *under[cid])
        return table

    def check_component(self, i: int) -> None:
        if not 0 <= i < self.n_components:
            raise DiagramError(
                DiagramErrorKind.INDEX_OUT_OF_RANGE,
                f"component {i} not in 0..{self.n_components - 1}",
            )

    def canonical_key(self) -> tuple:
        """Hashable key invariant under renumbering crossings"""
        relabel = relabeled(self)
        return (
            tuple(
                tuple((p.crossing, p.over) for p in comp)
                for comp in relabel.components
            ),
            tuple(relabel.signs[c] for c in sorted(relabel.signs)),
        )


def validate(d: LinkDiagram) -> list[DiagramError]:
    """Check referential integrity of a diagram.

    Returns:
        All problems found; an empty list means the diagram is valid.
    """
    problems: list[DiagramError] = []
    overs: Counter[int] = Counter()
    unders: Counter[int] = Counter()
    for comp in d.components:
        for passage in comp:
            (overs if passage.over else unders)[passage.crossing] += 1

    for cid in sorted(set(overs) | set(unders)):
        total = overs[cid] + unders[cid]
        if total > 2:
            problems.append(
                DiagramError(
                    DiagramErrorKind.BAD_ARITY, f"crossing {cid} visited {total} times"
                )
            )
        elif total == 1:
            problems.append(
                DiagramError(
                    DiagramErrorKind.DANGLING_CROSSING,
                    f"crossing {cid} visited only once",
                )
            )
        elif overs[cid] == 2 or unders[cid] == 2:
            role = "over" if overs[cid] == 2 else "under"
            problems.append(
                DiagramError(
                    DiagramErrorKind.DOUBLE_OVER,
                    f"crossing {cid} appears twice as {role}",
                )
            )
        if cid not in d.signs:
            problems.append(
                DiagramError(
                    DiagramErrorKind.DANGLING_CROSSING, f"crossing {cid} has no sign"
                )
            )

    for cid, sign in d.signs.items():
        if cid not in overs and cid not in unders:
            problems.append(
                DiagramError(
                    DiagramErrorKind.DANGLING_CROSSING,
                    f"crossing {cid} is never visited",
                )
            )
        if sign not in (1, -1):
            problems.append(
                DiagramError(
                    DiagramErrorKind.BAD_ARITY, f"crossing {cid} has sign {sign}"
                )
            )
    return problems


def require_valid(d: LinkDiagram) -> LinkDiagram:
    """Raise the first validation problem, else return the diagram"""
    problems = validate(d)
    if problems:
        raise problems[0]
    return d


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components i and j"""
    d.check_component(i)
    d.check_component(j)
    if i == j:
        raise DiagramError(
            DiagramErrorKind.INDEX_OUT_OF_RANGE, "linking number needs i != j"
        )
    total = sum(
        c.sign
        for c in d.crossings.values()
        if {c.over_component, c.under_component} == {i, j}
    )
    return total // 2


def linking_matrix(d: LinkDiagram) -> np.ndarray:
    """Symmetric integer matrix of pairwise linking numbers"""
    n = d.n_components
    doubled = np.zeros((n, n), dtype=np.int64)
    for c in d.crossings.values():
        if c.over_component != c.under_component:
            doubled[c.over_component, c.under_component] += c.sign
            doubled[c.under_component, c.over_component] += c.sign
    return doubled // 2


def remove_crossings(d: LinkDiagram, doomed: Iterable[int]) -> LinkDiagram:
    """Drop every passage through the given crossings"""
    doomed = set(doomed)
    return LinkDiagram(
        components=tuple(
            tuple(p for p in comp if p.crossing not in doomed) for comp in d.components
        ),
        signs={c: s for c, s in d.signs.items() if c not in doomed},
    )


def delete_component(d: LinkDiagram, i: int) -> LinkDiagram:
    """Remove component i and every crossing it takes part in.

    Components after i shift down by one; crossing ids are kept.
    """
    d.check_component(i)
    doomed = {p.crossing for p in d.components[i]}
    rest = remove_crossings(d, doomed)
    return LinkDiagram(
        components=rest.components[:i] + rest.components[i + 1 :], signs=rest.signs
    )


def delete_components(d: LinkDiagram, indices: Iterable[int]) -> LinkDiagram:
    """Remove several components; survivors keep their relative order"""
    for i in sorted(set(indices), reverse=True):
        d = delete_component(d, i)
    return d


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Flip every crossing: over becomes under and signs negate"""
    return LinkDiagram(
        components=tuple(
            tuple(Passage(p.crossing, not p.over) for p in comp)
            for comp in d.components
        ),
        signs={c: -s for c, s in d.signs.items()},
    )


def is_alternating(d: LinkDiagram) -> bool:
    for comp in d.components:
        for k, passage in enumerate(comp):
            if passage.over == comp[(k + 1) % len(comp)].over:
                return False
    return True


def split_families(d: LinkDiagram) -> list[frozenset[int]]:
    """Group components that are joined by chains of shared crossings"""
    graph = nx.Graph()
    graph.add_nodes_from(range(d.n_components))
    for c in d.crossings.values():
        graph.add_edge(c.over_component, c.under_component)
    parts = [frozenset(part) for part in nx.connected_components(graph)]
    return sorted(parts, key=min)


def relabeled(d: LinkDiagram) -> LinkDiagram:
    """Renumber crossings 0.. in order of first appearance"""
    mapping: dict[int, int] = {}
    for comp in d.components:
        for passage in comp:
            mapping.setdefault(passage.crossing, len(mapping))
    return LinkDiagram(
        components=tuple(
            tuple(Passage(mapping[p.crossing], p.over) for p in comp)
            for comp in d.components
        ),
        signs=dict(sorted((mapping[c], s) for c, s in d.signs.items())),
    )


def automorphism(d: LinkDiagram, sigma: Sequence[int]) -> dict[int, int] | None:
    """Crossing bijection carrying component c onto sigma[c], passages and signs kept.

    Each component may start anywhere along its image. Returns None when no
    such bijection exists.
    """
    n = d.n_components
    if sorted(sigma) != list(range(n)):
        return None
    order = sorted(range(n), key=lambda c: -len(d.components[c]))

    def extend(k: int, phi: dict[int, int], used: set[int]) -> dict[int, int] | None:
        if k == len(order):
            return phi
        c = order[k]
        source, target = d.components[c], d.components[sigma[c]]
        if len(source) != len(target):
            return None
        if not source:
            return extend(k + 1, phi, used)
        m = len(source)
        for shift in range(m):
            trial, taken, ok = dict(phi), set(used), True
            for j, passage in enumerate(source):
                image = target[(j + shift) % m]
                if passage.over != image.over:
                    ok = False
                    break
                known = trial.get(passage.crossing)
                if known is None:
                    if image.crossing in taken:
                        ok = False
                        break
                    trial[passage.crossing] = image.crossing
                    taken.add(image.crossing)
                elif known != image.crossing:
                    ok = False
                    break
            if ok:
                found = extend(k + 1, trial, taken)
                if found is not None:
                    return found
        return None

    phi = extend(0, {}, set())
    if phi is None or any(d.signs[c] != d.signs[phi[c]] for c in d.signs):
        return None
    return phi


def disjoint_union(*diagrams: LinkDiagram) -> LinkDiagram:
    """Place diagrams side by side, shifting crossing ids apart"""
    components: list[tuple[Passage, ...]] = []
    signs: dict[int, int] = {}
    offset = 0
    for d in diagrams:
        shift = {c: offset + k for k, c in enumerate(sorted(d.signs))}
        components.extend(
            tuple(Passage(shift[p.crossing], p.over) for p in comp)
            for comp in d.components
        )
        signs.update({shift[c]: s for c, s in d.signs.items()})
        offset += len(shift)
    return LinkDiagram(components=tuple(components), signs=signs)
