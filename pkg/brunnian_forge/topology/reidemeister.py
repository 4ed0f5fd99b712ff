"""
Reidemeister moves and a bounded simplifier.

Each crossing has four counterclockwise slots: 0 under-in, 2 under-out, and
for a positive crossing 1 over-out, 3 over-in (swapped when negative). Faces
are orbits of rotate-after-traverse on darts, a dart being a slot left along
its edge.
"""

import logging
import random
from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import StrEnum

from .bracket import format_poly, normalized_bracket, unlink_bracket
from .diagram import (
    LinkDiagram,
    Passage,
    delete_component,
    linking_matrix,
    remove_crossings,
)
from .presentation import LinkPresentation, word_from_piercings
from .stability import StabilityStatus, certify_stable
from .words import cyclic_reduce

logger = logging.getLogger(__name__)

Dart = tuple[int, int]
Edge = tuple[int, int]  # (component, index of the passage the edge leaves)


class MoveKind(StrEnum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"


@dataclass(frozen=True, slots=True)
class Move:
    kind: MoveKind
    site: tuple[int, ...]


@dataclass(frozen=True, slots=True)
class SimplifyBudget:
    max_r3_depth: int = 6
    max_states: int = 50000

    def __post_init__(self):
        if self.max_r3_depth < 0 or self.max_states < 1:
            raise ValueError("budget values must be positive")


@dataclass(frozen=True)
class SimplifyResult:
    diagram: LinkDiagram
    trace: tuple[Move, ...]
    exhausted: bool = False


class UnlinkVerdict(StrEnum):
    WITNESSED = "Witnessed"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class UnlinkResult:
    verdict: UnlinkVerdict
    certificate: tuple[Move, ...] = ()
    residual: LinkDiagram | None = None


def _in_slot(passage: Passage, sign: int) -> int:
    if not passage.over:
        return 0
    return 3 if sign > 0 else 1


def _out_slot(passage: Passage, sign: int) -> int:
    if not passage.over:
        return 2
    return 1 if sign > 0 else 3


@dataclass
class Embedding:
    """Rotation system of a diagram with its edge bookkeeping"""

    diagram: LinkDiagram
    mate: dict[Dart, Dart] = field(default_factory=dict)
    edge_of: dict[Dart, Edge] = field(default_factory=dict)

    @classmethod
    def of(cls, d: LinkDiagram) -> "Embedding":
        emb = cls(d)
        for ci, comp in enumerate(d.components):
            m = len(comp)
            for k, passage in enumerate(comp):
                nxt = comp[(k + 1) % m]
                tail = (passage.crossing, _out_slot(passage, d.signs[passage.crossing]))
                head = (nxt.crossing, _in_slot(nxt, d.signs[nxt.crossing]))
                emb.mate[tail] = head
                emb.mate[head] = tail
                emb.edge_of[tail] = emb.edge_of[head] = (ci, k)
        return emb

    def faces(self) -> list[list[Dart]]:
        seen: set[Dart] = set()
        faces = []
        for start in sorted(self.mate):
            if start in seen:
                continue
            face = []
            dart = start
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                crossing, slot = self.mate[dart]
                dart = (crossing, (slot + 1) % 4)
            faces.append(face)
        return faces

    def edge_pattern(self, edge: Edge) -> tuple[bool, bool]:
        ci, k = edge
        comp = self.diagram.components[ci]
        return comp[k].over, comp[(k + 1) % len(comp)].over


def is_planar(d: LinkDiagram) -> bool:
    """Euler check: every crossing-connected part is a sphere (F - V = 2)"""
    emb = Embedding.of(d)
    parent = {c: c for c in d.signs}

    def find(c: int) -> int:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for (a, _), (b, _) in emb.mate.items():
        parent[find(a)] = find(b)
    vertices: dict[int, int] = {}
    faces: dict[int, int] = {}
    for c in d.signs:
        root = find(c)
        vertices[root] = vertices.get(root, 0) + 1
    for face in emb.faces():
        root = find(face[0][0])
        faces[root] = faces.get(root, 0) + 1
    return all(faces.get(root, 0) - count == 2 for root, count in vertices.items())


def r1_sites(d: LinkDiagram) -> list[tuple[int, ...]]:
    sites = set()
    for comp in d.components:
        m = len(comp)
        for k in range(m):
            if m > 1 and comp[k].crossing == comp[(k + 1) % m].crossing:
                sites.add((comp[k].crossing,))
    return sorted(sites)


def _small_faces(emb: Embedding, size: int) -> list[list[Dart]]:
    return [
        face
        for face in emb.faces()
        if len(face) == size and len({c for c, _ in face}) == size
    ]


def r2_sites(d: LinkDiagram, emb: Embedding | None = None) -> list[tuple[int, ...]]:
    emb = emb or Embedding.of(d)
    sites = set()
    for face in _small_faces(emb, 2):
        patterns = {emb.edge_pattern(emb.edge_of[dart]) for dart in face}
        a, b = (c for c, _ in face)
        if patterns == {(True, True), (False, False)} and d.signs[a] == -d.signs[b]:
            sites.add(tuple(sorted((a, b))))
    return sorted(sites)


def _r3_faces(d: LinkDiagram, emb: Embedding) -> dict[tuple[int, ...], list[Edge]]:
    found = {}
    for face in _small_faces(emb, 3):
        edges = [emb.edge_of[dart] for dart in face]
        patterns = sorted(emb.edge_pattern(e) for e in edges)
        mixed = sum(1 for p in patterns if p[0] != p[1])
        if (False, False) in patterns and (True, True) in patterns and mixed == 1:
            found[tuple(sorted(c for c, _ in face))] = edges
    return found


def r3_sites(d: LinkDiagram, emb: Embedding | None = None) -> list[tuple[int, ...]]:
    return sorted(_r3_faces(d, emb or Embedding.of(d)))


def apply_move(d: LinkDiagram, move: Move) -> LinkDiagram:
    """Apply a move at a site reported by the matching *_sites function"""
    if move.kind in (MoveKind.R1, MoveKind.R2):
        return remove_crossings(d, move.site)
    edges = _r3_faces(d, Embedding.of(d))[move.site]
    components = [list(comp) for comp in d.components]
    for ci, k in edges:
        comp = components[ci]
        j = (k + 1) % len(comp)
        comp[k], comp[j] = comp[j], comp[k]
    return LinkDiagram(components=tuple(tuple(c) for c in components), signs=d.signs)


def applicable_moves(d: LinkDiagram) -> list[Move]:
    emb = Embedding.of(d)
    return (
        [Move(MoveKind.R1, s) for s in r1_sites(d)]
        + [Move(MoveKind.R2, s) for s in r2_sites(d, emb)]
        + [Move(MoveKind.R3, s) for s in r3_sites(d, emb)]
    )


def random_move(d: LinkDiagram, rng: random.Random) -> tuple[LinkDiagram, Move | None]:
    """Apply one uniformly chosen applicable move, if any"""
    moves = applicable_moves(d)
    if not moves:
        return d, None
    move = rng.choice(moves)
    return apply_move(d, move), move


def _greedy(d: LinkDiagram, trace: list[Move]) -> LinkDiagram:
    while d.crossing_count:
        sites = r1_sites(d)
        if sites:
            move = Move(MoveKind.R1, sites[0])
        else:
            sites = r2_sites(d)
            if not sites:
                break
            move = Move(MoveKind.R2, sites[0])
        d = remove_crossings(d, move.site)
        trace.append(move)
    return d


def _r3_search(
    d: LinkDiagram, budget: SimplifyBudget, states_left: int
) -> tuple[list[Move], LinkDiagram, int] | None:
    """Breadth-first search for an R3 path after which greedy moves apply.

    Returns (moves, reduced diagram, states used) or None when the depth or
    state budget runs out first.
    """
    frontier: deque[tuple[LinkDiagram, list[Move]]] = deque([(d, [])])
    seen = {d.canonical_key()}
    used = 0
    while frontier:
        state, path = frontier.popleft()
        if len(path) >= budget.max_r3_depth:
            continue
        for site in r3_sites(state):
            move = Move(MoveKind.R3, site)
            nxt = apply_move(state, move)
            key = nxt.canonical_key()
            if key in seen:
                continue
            seen.add(key)
            used += 1
            if used > states_left:
                return None
            greedy_trace: list[Move] = []
            reduced = _greedy(nxt, greedy_trace)
            if greedy_trace:
                return path + [move] + greedy_trace, reduced, used
            frontier.append((nxt, path + [move]))
    return None


def simplify(d: LinkDiagram, budget: SimplifyBudget | None = None) -> SimplifyResult:
    """Reduce crossings with greedy R1/R2 moves, using R3 search when stuck.

    Deterministic: the smallest sorted crossing-id site is taken first and R3
    neighbours are expanded in site order.
    """
    budget = budget or SimplifyBudget()
    trace: list[Move] = []
    states_left = budget.max_states
    while True:
        d = _greedy(d, trace)
        if d.crossing_count == 0 or budget.max_r3_depth == 0:
            break
        found = _r3_search(d, budget, states_left)
        if found is None:
            logger.debug("R3 search gave up at %d crossings", d.crossing_count)
            return SimplifyResult(d, tuple(trace), exhausted=True)
        moves, d, used = found
        states_left -= used
        trace.extend(moves)
    return SimplifyResult(d, tuple(trace))


def is_unlink(d: LinkDiagram, budget: SimplifyBudget | None = None) -> UnlinkResult:
    """Unlink when the simplifier reaches zero crossings; never a false positive"""
    result = simplify(d, budget)
    if result.diagram.crossing_count == 0:
        return UnlinkResult(UnlinkVerdict.WITNESSED, result.trace)
    return UnlinkResult(UnlinkVerdict.UNKNOWN, result.trace, result.diagram)


def replay_moves(d: LinkDiagram, moves: Iterable[Move]) -> LinkDiagram:
    """Re-apply a recorded trace, checking each move is applicable when reached.

    Raises:
        ValueError: at the first move with no matching site
    """
    for step, move in enumerate(moves):
        if move not in applicable_moves(d):
            raise ValueError(
                f"step {step}: {move.kind.value} at {list(move.site)} does not apply"
            )
        d = apply_move(d, move)
    return d


# -- Brunnian property --------------------------------------------------------


class Nontriviality(StrEnum):
    NONZERO_LINKING = "NonzeroLinking"
    NONEMPTY_REDUCED_WORD = "NonemptyReducedWord"
    STABLE_POSITIVE_DISK = "StablePositiveDisk"
    NONTRIVIAL_BRACKET = "NontrivialBracket"
    UNKNOWN = "Unknown"


class BrunnianVerdict(StrEnum):
    BRUNNIAN_WITNESSED = "BrunnianWitnessed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class BrunnianReport:
    deletions: dict[int, UnlinkResult]
    nontriviality: Nontriviality
    evidence: str
    verdict: BrunnianVerdict


def _nontriviality(p: LinkPresentation) -> tuple[Nontriviality, str]:
    lk = linking_matrix(p.diagram)
    n = p.n_components
    for i in range(n):
        for j in range(i + 1, n):
            if lk[i, j]:
                names = f"lk({p.label(i)}, {p.label(j)}) = {lk[i, j]}"
                return Nontriviality.NONZERO_LINKING, names
    for c in range(n):
        word = cyclic_reduce(word_from_piercings(p, c))
        if len(word):
            return Nontriviality.NONEMPTY_REDUCED_WORD, f"{p.label(c)}: {word}"
    for disk_id in p.registry.disk_ids:
        verdict = certify_stable(p, disk_id)
        if verdict.status is StabilityStatus.CERTIFIED and verdict.actual > 0:
            return (
                Nontriviality.STABLE_POSITIVE_DISK,
                f"{disk_id}: {verdict.actual} points, {verdict.method}",
            )
    value = normalized_bracket(p.diagram)
    if value is not None and value != unlink_bracket(n):
        return Nontriviality.NONTRIVIAL_BRACKET, f"<L> = {format_poly(value)}"
    return Nontriviality.UNKNOWN, ""


def brunnian_report(
    p: LinkPresentation, budget: SimplifyBudget | None = None
) -> BrunnianReport:
    """Witness each one-component deletion as an unlink and the link as nontrivial.

    Deleting one component suffices: sublinks of an unlink are unlinks.
    """
    deletions = {
        i: is_unlink(delete_component(p.diagram, i), budget)
        for i in range(p.n_components)
    }
    kind, evidence = _nontriviality(p)
    witnessed = all(r.verdict is UnlinkVerdict.WITNESSED for r in deletions.values())
    verdict = (
        BrunnianVerdict.BRUNNIAN_WITNESSED
        if witnessed and kind is not Nontriviality.UNKNOWN
        else BrunnianVerdict.INCONCLUSIVE
    )
    return BrunnianReport(deletions, kind, evidence, verdict)
