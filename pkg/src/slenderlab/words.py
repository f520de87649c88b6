"""Free-group words over an integer-indexed alphabet.

A letter is stored as a nonzero integer code: generator ``a_i`` is ``i + 1``
and its inverse is ``-(i + 1)``.  The text form uses ``a3`` for ``a_3`` and
``A3`` for its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence


class Generator(NamedTuple):
    index: int
    sign: int

    @property
    def code(self) -> int:
        return self.sign * (self.index + 1)

    @classmethod
    def from_code(cls, code: int) -> "Generator":
        if code == 0:
            raise ValueError("0 is not a letter code")
        return cls(abs(code) - 1, 1 if code > 0 else -1)

    def __str__(self) -> str:
        return ("a" if self.sign > 0 else "A") + str(self.index)


def _reduce_codes(codes: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in codes:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Immutable word; ``letters`` holds signed letter codes."""

    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.letters, tuple):
            object.__setattr__(self, "letters", tuple(self.letters))
        if 0 in self.letters:
            raise ValueError("0 is not a letter code")

    @classmethod
    def from_generators(cls, gens: Iterable[Generator]) -> "FreeWord":
        return cls(tuple(g.code for g in gens))

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        return cls(parse_tokens(text))

    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator.from_code(c) for c in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        # plain concatenation; call reduce() for the group product
        return FreeWord(self.letters + other.letters)

    def __pow__(self, k: int) -> "FreeWord":
        return power_word(self, k)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple(-c for c in reversed(self.letters)))

    def reduce(self) -> "FreeWord":
        return free_reduce(self)

    def is_reduced(self) -> bool:
        return all(a != -b for a, b in zip(self.letters, self.letters[1:]))

    def max_index(self) -> int:
        return max((abs(c) - 1 for c in self.letters), default=-1)

    def __str__(self) -> str:
        return format_word(self.letters)


def free_reduce(w: FreeWord | Sequence[int]) -> FreeWord:
    letters = w.letters if isinstance(w, FreeWord) else tuple(w)
    return FreeWord(_reduce_codes(letters))


def power_word(w: FreeWord, k: int) -> FreeWord:
    """Reduced word for ``w**k``.

    Only the cyclically reduced core is repeated, so large exponents cost
    ``O(|w| + k * |core|)``.
    """
    base = free_reduce(w).letters
    if k < 0:
        base = tuple(-c for c in reversed(base))
        k = -k
    if k == 0 or not base:
        return FreeWord()
    i, j = 0, len(base) - 1
    while i < j and base[i] == -base[j]:
        i += 1
        j -= 1
    prefix, core, suffix = base[:i], base[i:j + 1], base[j + 1:]
    return FreeWord(prefix + core * k + suffix)


def cyclic_reduce(w: FreeWord) -> FreeWord:
    letters = free_reduce(w).letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == -letters[j]:
        i += 1
        j -= 1
    return FreeWord(letters[i:j + 1])


def parse_tokens(text: str) -> tuple[int, ...]:
    """Parse ``"a0 A1 a12"`` into letter codes."""
    codes = []
    for tok in text.split():
        head, tail = tok[0], tok[1:]
        if head not in "aA" or not tail.isdigit():
            raise ValueError(f"bad letter token {tok!r}")
        idx = int(tail)
        codes.append(idx + 1 if head == "a" else -(idx + 1))
    return tuple(codes)


def format_word(codes: Iterable[int]) -> str:
    return " ".join(str(Generator.from_code(c)) for c in codes)


def letter(index: int, sign: int = 1) -> FreeWord:
    return FreeWord((sign * (index + 1),))
