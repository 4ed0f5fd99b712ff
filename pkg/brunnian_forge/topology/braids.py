"""
Closed pure braids built from wrap letters.

Strands sit at positions 0..k-1 and run upward. A wrap letter moves one strand
next to another, passing under every strand in between, winds once around it
and returns the same way, so deleting either strand leaves a word that cancels
freely. Commutators of wraps give Brunnian closures.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from .diagram import LinkDiagram, Passage

Sigma = tuple[int, int]  # (column, +1 or -1); column i swaps positions i and i+1


@dataclass(frozen=True, slots=True)
class Wrap:
    """Strand at position `wanderer` winds around the strand at `ring`"""

    wanderer: int
    ring: int
    sign: int = 1

    def inverse(self) -> "Wrap":
        return Wrap(self.wanderer, self.ring, -self.sign)


WrapWord = tuple[Wrap, ...]


def invert(word: Sequence[Wrap]) -> WrapWord:
    return tuple(w.inverse() for w in reversed(word))


def bracket(x: Sequence[Wrap], y: Sequence[Wrap]) -> WrapWord:
    return tuple(x) + tuple(y) + invert(x) + invert(y)


def left_normed(letters: Sequence[WrapWord]) -> WrapWord:
    """[[...[a, b], c], ...]"""
    word = letters[0]
    for nxt in letters[1:]:
        word = bracket(word, nxt)
    return word


def right_normed(letters: Sequence[WrapWord]) -> WrapWord:
    """[a, [b, [c, ...]]]"""
    word = letters[-1]
    for prev in reversed(letters[:-1]):
        word = bracket(prev, word)
    return word


def expand(word: Sequence[Wrap]) -> list[Sigma]:
    """Artin generators realising each wrap"""
    sigmas: list[Sigma] = []
    for wrap in word:
        w, k = wrap.wanderer, wrap.ring
        if w > k:
            approach = [(col, 1) for col in range(w - 1, k, -1)]
            twist = [(k, wrap.sign)] * 2
        elif w < k:
            approach = [(col, -1) for col in range(w, k - 1)]
            twist = [(k - 1, wrap.sign)] * 2
        else:
            raise ValueError(f"wrap of position {w} around itself")
        depart = [(col, -s) for col, s in reversed(approach)]
        sigmas.extend(approach + twist + depart)
    return sigmas


def closure(strands: int, sigmas: Sequence[Sigma]) -> LinkDiagram:
    """Diagram of the closed braid; component i is the strand starting at position i.

    A positive generator carries the left strand over the right one.

    Raises:
        ValueError: if the braid is not pure
    """
    at = list(range(strands))
    passages: list[list[Passage]] = [[] for _ in range(strands)]
    signs: dict[int, int] = {}
    for cid, (col, sign) in enumerate(sigmas):
        if not 0 <= col < strands - 1:
            raise ValueError(f"column {col} outside a {strands}-strand braid")
        left, right = at[col], at[col + 1]
        passages[left].append(Passage(cid, sign > 0))
        passages[right].append(Passage(cid, sign < 0))
        signs[cid] = sign
        at[col], at[col + 1] = right, left
    if at != list(range(strands)):
        raise ValueError("braid word is not pure")
    return LinkDiagram(components=tuple(tuple(p) for p in passages), signs=signs)


def wrap_closure(strands: int, word: Sequence[Wrap]) -> LinkDiagram:
    return closure(strands, expand(word))
