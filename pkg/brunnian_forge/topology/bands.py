"""
Necklaces of lassoed bands.

Each component is a band: two parallel strands joined by a cup at its left
tip and a cap at its right tip. Bands sit around an annulus in ring order.
At the joint between band k and band k+1 the left tip of k+1 lassos band k,
then the right tip of k lassos band k+1. Deleting one band frees the tips of
both neighbours and the rest unravels by R2 moves, one joint at a time.

Time runs around the annulus and positions count outward from the inner
rim. The disk of a band is the strip between its strands; piercings are
read off the sweep, a strand piercing a strip when it enters under one
boundary strand and leaves over the other (or the reverse).
"""

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

from .diagram import LinkDiagram, Passage


class Joint(StrEnum):
    """How the right tip of band k lassos band k+1"""

    PLAIN = "plain"  # out over, back under
    CROSSED = "crossed"  # out under, back over


@dataclass(eq=False)
class _Strand:
    component: int
    direction: int  # +1 runs with time
    passages: list[Passage] = field(default_factory=list)
    exits: dict[int, tuple[int, int]] = field(default_factory=dict)


@dataclass(frozen=True)
class Necklace:
    """Diagram plus, per component, its piercings (disk boundary, sign) in order"""

    diagram: LinkDiagram
    piercings: dict[int, tuple[tuple[int, int], ...]]
    joints: tuple[Joint, ...]


class _Sweep:
    def __init__(self) -> None:
        self.at: list[_Strand] = []
        self.signs: dict[int, int] = {}
        self.ids = itertools.count()
        self.bands: dict[int, tuple[_Strand, _Strand]] = {}
        self.entered: dict[tuple[int, int], bool] = {}

    def cup(self, component: int) -> tuple[_Strand, _Strand]:
        low, high = _Strand(component, -1), _Strand(component, 1)
        self.at[:0] = [low, high]
        self.bands[component] = (low, high)
        return low, high

    def cap(self) -> None:
        low, high = self.at[:2]
        if low.component != high.component:
            raise ValueError("cap joins strands of different bands")
        del self.at[:2]
        del self.bands[low.component]

    def _inside(self, strand: _Strand, component: int) -> bool:
        low, high = self.bands[component]
        where = {id(s): k for k, s in enumerate(self.at)}
        lo, hi = sorted((where[id(low)], where[id(high)]))
        return lo < where[id(strand)] < hi

    def swap(self, i: int, left_over: bool) -> None:
        left, right = self.at[i], self.at[i + 1]
        cid = next(self.ids)
        sign = (1 if left_over else -1) * left.direction * right.direction
        self.signs[cid] = sign
        left.passages.append(Passage(cid, left_over))
        right.passages.append(Passage(cid, not left_over))

        watched = [
            (x, y.component, left_over if x is left else not left_over)
            for x, y in ((left, right), (right, left))
            if x.component != y.component and y.component in self.bands
        ]
        before = [self._inside(x, c) for x, c, _ in watched]
        self.at[i], self.at[i + 1] = right, left
        for (x, c, over), was in zip(watched, before):
            now = self._inside(x, c)
            key = (id(x), c)
            if now and not was:
                self.entered[key] = over
            elif was and not now:
                if key not in self.entered:
                    raise ValueError(f"strand left the strip of band {c} unentered")
                if self.entered.pop(key) != over:
                    x.exits[cid] = (c, sign)

    def joint(self, kind: Joint, nxt: int) -> None:
        """Band at positions 0, 1 hooks band nxt, then caps off"""
        self.cup(nxt)
        self.swap(1, False)
        self.swap(2, False)
        self.swap(0, True)
        self.swap(1, True)
        out = kind is Joint.PLAIN
        self.swap(1, out)
        self.swap(2, out)
        self.swap(2, out)
        self.swap(1, out)
        self.cap()


def necklace(joints: Sequence[Joint]) -> Necklace:
    """Ring of len(joints) bands; joint k hooks band k to band k+1 (mod n).

    Raises:
        ValueError: for fewer than two bands
    """
    n = len(joints)
    if n < 2:
        raise ValueError("a necklace needs at least two bands")
    sweep = _Sweep()
    early = sweep.cup(0)
    late: tuple[_Strand, _Strand] | None = None
    strands: dict[int, tuple[_Strand, _Strand]] = {}
    for k, kind in enumerate(joints):
        nxt = (k + 1) % n
        sweep.joint(kind, nxt)
        low, high = sweep.bands[nxt]
        if nxt == 0:
            late = (low, high)
        else:
            strands[nxt] = (low, high)
    assert late is not None

    components: list[tuple[Passage, ...]] = []
    piercings: dict[int, tuple[tuple[int, int], ...]] = {}
    for c in range(n):
        if c == 0:
            low = _merge(late[0], early[0])
            high = _merge(late[1], early[1])
        else:
            low, high = strands[c]
        passages = high.passages + low.passages[::-1]
        exits = high.exits | low.exits
        components.append(tuple(passages))
        piercings[c] = tuple(exits[p.crossing] for p in passages if p.crossing in exits)
    diagram = LinkDiagram(components=tuple(components), signs=sweep.signs)
    return Necklace(diagram, piercings, tuple(joints))


def _merge(born: _Strand, carried: _Strand) -> _Strand:
    """Join a strand born late in the sweep with its continuation from time 0"""
    return _Strand(
        born.component,
        born.direction,
        born.passages + carried.passages,
        born.exits | carried.exits,
    )
