"""Finite-support words of the Hawaiian Earring group.

Only finitely many letters ``a_n`` ever appear, so a word is an ordinary
``FreeWord`` whose letter index plays the role of the circle number.
Infinite nested words are handled as finite-depth truncations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from .lengths import LengthFunction, UmWitness
from .words import FreeWord, format_word, free_reduce, parse_tokens


def _index(code: int) -> int:
    return abs(code) - 1


def project_low(w: FreeWord, n: int) -> FreeWord:
    """Keep the letters ``a_i`` with ``i <= n``."""
    return free_reduce([c for c in w.letters if _index(c) <= n])


def project_high(w: FreeWord, n: int) -> FreeWord:
    """Keep the letters ``a_i`` with ``i > n``."""
    return free_reduce([c for c in w.letters if _index(c) > n])


def alternating_decomposition(w: FreeWord, n: int) -> list[FreeWord]:
    blocks: list[list[int]] = []
    side = None
    for c in w.letters:
        s = _index(c) > n
        if s is not side:
            blocks.append([])
            side = s
        blocks[-1].append(c)
    return [FreeWord(tuple(b)) for b in blocks]


# nested words ------------------------------------------------------------

@dataclass(frozen=True)
class NestedSpec:
    """Levels ``(W_p, k_p)`` for ``p = 1..d``, stored in order."""

    entries: tuple[tuple[FreeWord, int], ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise ValueError("nested spec needs depth >= 1")
        for p, (w, k) in enumerate(self.entries, start=1):
            if not w:
                raise ValueError(f"W_{p} is empty")
            if k < 1:
                raise ValueError(f"k_{p} must be positive, got {k}")
            low = min(_index(c) for c in w.letters)
            if low < p:
                raise ValueError(f"W_{p} uses a{low}; only indices >= {p} allowed")

    @property
    def depth(self) -> int:
        return len(self.entries)

    def word(self, p: int) -> FreeWord:
        return self.entries[p - 1][0]

    def exponent(self, p: int) -> int:
        return self.entries[p - 1][1]

    def with_exponents(self, ks: Sequence[int]) -> "NestedSpec":
        return NestedSpec(tuple((w, k) for (w, _), k in zip(self.entries, ks)))

    @classmethod
    def parse(cls, text: str) -> "NestedSpec":
        entries = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            m = re.fullmatch(r"W=(.*?)\s+k=(-?\d+)", line)
            if not m:
                raise ValueError(f"bad nested-spec line {raw!r}")
            entries.append((FreeWord(parse_tokens(m.group(1))), int(m.group(2))))
        return cls(tuple(entries))

    @classmethod
    def load(cls, path: str | Path) -> "NestedSpec":
        return cls.parse(Path(path).read_text())

    def dumps(self) -> str:
        return "".join(f"W={format_word(w.letters)} k={k}\n" for w, k in self.entries)


def nested_levels(spec: NestedSpec) -> list[FreeWord]:
    """Return ``[U_0, U_1, ..., U_d]`` with ``U_d`` empty."""
    levels = [FreeWord()]
    for p in range(spec.depth, 0, -1):
        inner = levels[-1].letters * spec.exponent(p)
        levels.append(free_reduce(spec.word(p).letters + inner))
    return levels[::-1]


def build_nested(spec: NestedSpec) -> FreeWord:
    return nested_levels(spec)[0]


# descent verification ----------------------------------------------------

class HypothesisError(ValueError):
    """Raised when some ``phi(W_p)`` is trivial."""


@dataclass(frozen=True)
class LetterAssignment:
    images: Mapping[int, Any]
    length: LengthFunction
    witness: UmWitness

    def evaluate(self, w: FreeWord) -> Any:
        l = self.length
        g = l.identity
        for c in w.letters:
            try:
                img = self.images[_index(c)]
            except KeyError:
                raise KeyError(f"no image assigned to a{_index(c)}") from None
            g = l.mul(g, img if c > 0 else l.inverse(img))
        return g


@dataclass(frozen=True)
class DescentStep:
    p: int              # step U_p -> U_{p-1}
    inner_trivial: bool
    inner_length: Any
    outer_length: Any
    power_gain_ok: bool  # l(U_p^{k_p}) >= l(U_p) + r_p + 1
    passed: bool


@dataclass(frozen=True)
class DescentReport:
    exponents: tuple[int, ...]
    word_lengths: tuple[Any, ...]   # r_p = l(phi(W_p)) for p = 1..d
    lengths: tuple[Any, ...]        # l(phi(U_p)) for p = d, d-1, ..., 0
    steps: tuple[DescentStep, ...]
    forced_trivial_index: Any       # the argument forces phi(U_p) = 1 beyond this
    exponents_match_witness: bool

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)


def witness_exponents(spec: NestedSpec, phi: LetterAssignment) -> list[int]:
    l = phi.length
    return [phi.witness(l(phi.evaluate(spec.word(p))) + 1) for p in range(1, spec.depth + 1)]


def higman_chain_verify(spec: NestedSpec, phi: LetterAssignment, recompute: bool = False) -> DescentReport:
    l = phi.length
    images = []
    for p in range(1, spec.depth + 1):
        g = phi.evaluate(spec.word(p))
        if l.trivial(g):
            raise HypothesisError(f"phi(W_{p}) is trivial")
        images.append(g)
    radii = [l(g) for g in images]
    wanted = [phi.witness(r + 1) for r in radii]
    if recompute:
        spec = spec.with_exponents(wanted)
    ks = [spec.exponent(p) for p in range(1, spec.depth + 1)]

    values = [l.identity]          # phi(U_d)
    lengths = [l(l.identity)]
    steps = []
    for p in range(spec.depth, 0, -1):
        inner = values[-1]
        powered = l.power(inner, ks[p - 1])
        outer = l.mul(images[p - 1], powered)
        li, lo = lengths[-1], l(outer)
        trivial = l.trivial(inner)
        gain = trivial or l(powered) >= li + radii[p - 1] + 1
        steps.append(DescentStep(p, trivial, li, lo, gain, trivial or lo >= li + 1))
        values.append(outer)
        lengths.append(lo)
    return DescentReport(
        exponents=tuple(ks),
        word_lengths=tuple(radii),
        lengths=tuple(lengths),
        steps=tuple(steps),
        forced_trivial_index=lengths[-1] + 1,
        exponents_match_witness=ks == wanted,
    )
