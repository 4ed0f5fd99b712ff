"""Free-group words over disk generators"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass


@dataclass(frozen=True, slots=True, order=True)
class Letter:
    generator: str
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else f"{self.generator}^-1"


Word = tuple[Letter, ...]


def inverse(word: Sequence[Letter]) -> Word:
    return tuple(letter.inverse() for letter in reversed(word))


def commutator(x: Sequence[Letter], y: Sequence[Letter]) -> Word:
    """[x, y] = x y x^-1 y^-1"""
    return tuple(x) + tuple(y) + inverse(x) + inverse(y)


def reduce(word: Iterable[Letter]) -> Word:
    """Free reduction; the result does not depend on cancellation order"""
    stack: list[Letter] = []
    for letter in word:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _least_rotation(letters: Word) -> Word:
    if not letters:
        return letters
    return min(letters[k:] + letters[:k] for k in range(len(letters)))


@dataclass(frozen=True, init=False)
class CyclicWord:
    """Word read around a circle: rotations compare equal"""

    letters: Word

    def __init__(self, letters: Iterable[Letter] = ()):
        object.__setattr__(self, "letters", tuple(letters))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CyclicWord):
            return NotImplemented
        return _least_rotation(self.letters) == _least_rotation(other.letters)

    def __hash__(self) -> int:
        return hash(_least_rotation(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(str(letter) for letter in self.letters) or "1"

    def count(self, generator: str) -> int:
        return sum(1 for letter in self.letters if letter.generator == generator)

    def rotated(self, k: int) -> "CyclicWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return CyclicWord(self.letters[k:] + self.letters[:k])


def cyclic_reduce(word: CyclicWord) -> CyclicWord:
    """Free reduction followed by stripping cancelling end letters"""
    letters = list(reduce(word.letters))
    while len(letters) >= 2 and letters[0] == letters[-1].inverse():
        letters = letters[1:-1]
    return CyclicWord(letters)


def parse_word(text: str) -> Word:
    """Parse `g1 g2 g1^-1` style text"""
    letters = []
    for token in text.split():
        if token == "1":
            continue
        if token.endswith("^-1"):
            letters.append(Letter(token[:-3], -1))
        else:
            letters.append(Letter(token, 1))
    return tuple(letters)
