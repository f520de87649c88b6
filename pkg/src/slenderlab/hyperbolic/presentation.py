"""Finite presentations, the C'(1/6) piece check and Dehn's algorithm."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from ..words import FreeWord, cyclic_reduce, format_word, free_reduce, parse_tokens


@dataclass(frozen=True)
class Presentation:
    rank: int
    relators: tuple[FreeWord, ...] = ()
    name: str = ""

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        rels = tuple(r if isinstance(r, FreeWord) else FreeWord(tuple(r)) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            if not r:
                raise ValueError("empty relator")
            if r != cyclic_reduce(r):
                raise ValueError(f"relator {r} is not cyclically reduced")
            if r.max_index() >= self.rank:
                raise ValueError(f"relator {r} uses a generator outside rank {self.rank}")

    @property
    def letters(self) -> tuple[int, ...]:
        """All letters in shortlex order ``a0 < A0 < a1 < A1 < ...``."""
        out = []
        for i in range(1, self.rank + 1):
            out += [i, -i]
        return tuple(out)

    @cached_property
    def symmetrized(self) -> tuple[tuple[int, ...], ...]:
        """Distinct cyclic permutations of the relators and their inverses."""
        seen: dict[tuple[int, ...], None] = {}
        for r in self.relators:
            for word in (r.letters, r.inverse().letters):
                for i in range(len(word)):
                    seen.setdefault(word[i:] + word[:i], None)
        return tuple(seen)

    @cached_property
    def _dehn_table(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        table: dict[tuple[int, ...], tuple[int, ...]] = {}
        for r in self.symmetrized:
            n = len(r)
            for cut in range(n // 2 + 1, n + 1):
                head, tail = r[:cut], r[cut:]
                # head * tail = 1, so head = tail^-1
                table.setdefault(head, tuple(-c for c in reversed(tail)))
        return table

    @cached_property
    def _dehn_lengths(self) -> tuple[int, ...]:
        return tuple(sorted({len(k) for k in self._dehn_table}, reverse=True))

    def dumps(self) -> str:
        lines = [f"gens: {self.rank}"]
        lines += [f"rel: {format_word(r.letters)}" for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str, name: str = "") -> "Presentation":
        rank = None
        rels = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, value = line.partition(":")
            key = key.strip()
            if key == "gens":
                rank = int(value)
            elif key == "rel":
                rels.append(FreeWord(parse_tokens(value)))
            else:
                raise ValueError(f"bad presentation line {raw!r}")
        if rank is None:
            raise ValueError("presentation file lacks a 'gens:' line")
        return cls(rank, tuple(rels), name)

    @classmethod
    def load(cls, path: str | Path) -> "Presentation":
        p = Path(path)
        return cls.parse(p.read_text(), p.stem)


def free_presentation(rank: int) -> Presentation:
    return Presentation(rank, (), f"F{rank}")


def surface_presentation(genus: int) -> Presentation:
    """``<a_0..a_{2g-1} | [a_0,a_1][a_2,a_3]...>`` with ``[x,y] = x y x^-1 y^-1``."""
    rel = []
    for i in range(genus):
        x, y = 2 * i + 1, 2 * i + 2
        rel += [x, y, -x, -y]
    return Presentation(2 * genus, (FreeWord(tuple(rel)),), f"surface{genus}")


def bs_presentation(n: int) -> Presentation:
    """``BS(1,n) = <a, b | b a b^-1 a^-n>`` with ``a = a0``, ``b = a1``."""
    return Presentation(2, (FreeWord((2, 1, -2) + (-1,) * n),), f"BS(1,{n})")


# small cancellation ------------------------------------------------------

@dataclass(frozen=True)
class PieceWitness:
    holds: bool
    max_piece: int
    min_relator: int
    piece: tuple[int, ...] = ()
    pair: tuple[tuple[int, ...], tuple[int, ...]] = field(default=((), ()))

    @property
    def bound(self) -> Fraction:
        return Fraction(self.min_relator, 6)


def _common_prefix(u: tuple[int, ...], v: tuple[int, ...]) -> int:
    n = 0
    for a, b in zip(u, v):
        if a != b:
            break
        n += 1
    return n


def c16_check(P: Presentation) -> PieceWitness:
    """Max piece length over distinct elements of the symmetrized set versus ``min |r| / 6``."""
    if not P.relators:
        return PieceWitness(True, 0, 0)
    sym = sorted(P.symmetrized)
    best, pair = 0, ((), ())
    # the longest common prefix among distinct words is attained by neighbours in sorted order
    for u, v in zip(sym, sym[1:]):
        n = _common_prefix(u, v)
        if n > best:
            best, pair = n, (u, v)
    shortest = min(len(r) for r in P.relators)
    return PieceWitness(6 * best < shortest, best, shortest, pair[0][:best], pair)


class StrategyError(ValueError):
    pass


def dehn_reduce(P: Presentation, w: FreeWord, check: bool = True) -> FreeWord:
    """Free reduction plus greedy replacement of long relator subwords.

    The result is empty iff ``w`` is trivial, provided ``P`` is C'(1/6).
    """
    if check and P.relators and not c16_check(P).holds:
        raise StrategyError(f"Dehn's algorithm needs a C'(1/6) presentation; {P.name or P} is not")
    return FreeWord(_dehn(P, free_reduce(w).letters))


def _dehn(P: Presentation, word: tuple[int, ...]) -> tuple[int, ...]:
    table = P._dehn_table
    if not table:
        return word
    lengths = P._dehn_lengths
    w = list(word)
    changed = True
    while changed:
        changed = False
        n = len(w)
        for i in range(n):
            for L in lengths:
                if i + L > n:
                    continue
                rep = table.get(tuple(w[i:i + L]))
                if rep is not None:
                    w = list(free_reduce(tuple(w[:i]) + rep + tuple(w[i + L:])).letters)
                    changed = True
                    break
            if changed:
                break
    return tuple(w)
