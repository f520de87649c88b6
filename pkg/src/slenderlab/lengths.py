"""Length functions and universal-monotonicity witnesses."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from .words import FreeWord, free_reduce, power_word

Number = int | Fraction


@dataclass(frozen=True)
class LengthFunction:
    """A length function together with the group operations it is measured on.

    Elements are opaque handles; ``is_identity`` defaults to comparing with
    ``identity``, which is only right when handles are canonical.
    """

    tag: str
    length: Callable[[Any], Number]
    mul: Callable[[Any, Any], Any]
    inverse: Callable[[Any], Any]
    identity: Any
    is_identity: Optional[Callable[[Any], bool]] = None
    pow: Optional[Callable[[Any, int], Any]] = None

    def __call__(self, g: Any) -> Number:
        return self.length(g)

    def trivial(self, g: Any) -> bool:
        if self.is_identity is not None:
            return self.is_identity(g)
        return g == self.identity

    def power(self, g: Any, k: int) -> Any:
        if self.pow is not None:
            return self.pow(g, k)
        if k < 0:
            g, k = self.inverse(g), -k
        result, base = self.identity, g
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result


@dataclass(frozen=True)
class UmWitness:
    """Exponent rule ``r -> K_r``; ``radius`` records how far it was sampled."""

    exponent: Callable[[Fraction], int]
    description: str = ""
    radius: Optional[int] = None

    def __call__(self, r: Number) -> int:
        k = self.exponent(Fraction(r))
        if k < 1:
            raise ValueError(f"witness returned non-positive exponent {k}")
        return k


@dataclass(frozen=True)
class UmEntry:
    element: Any
    length: Number
    exponent: int
    power_length: Number
    passed: bool


@dataclass(frozen=True)
class UmReport:
    r: Fraction
    entries: tuple[UmEntry, ...]
    skipped_identity: int
    radius: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


def um_check(l: LengthFunction, witness: UmWitness, sample: Iterable[Any], r: Number) -> UmReport:
    r = Fraction(r)
    if r < 0:
        raise ValueError("r must be nonnegative")
    k = witness(r)
    entries = []
    skipped = 0
    for g in sample:
        if l.trivial(g):
            skipped += 1
            continue
        lg = l(g)
        lgk = l(l.power(g, k))
        entries.append(UmEntry(g, lg, k, lgk, lgk >= lg + r))
    return UmReport(r, tuple(entries), skipped, witness.radius)


@dataclass
class AxiomViolations:
    identity: list = field(default_factory=list)
    symmetry: list = field(default_factory=list)
    triangle: list = field(default_factory=list)
    negative: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.identity or self.symmetry or self.triangle or self.negative)


def check_axioms(l: LengthFunction, pairs: Iterable[tuple[Any, Any]]) -> AxiomViolations:
    """Check ``l(1)=0``, symmetry and subadditivity on the given pairs."""
    v = AxiomViolations()
    if l(l.identity) != 0:
        v.identity.append(l.identity)
    for g, h in pairs:
        lg, lh = l(g), l(h)
        if lg < 0:
            v.negative.append(g)
        if l(l.inverse(g)) != lg:
            v.symmetry.append(g)
        if l(l.mul(g, h)) > lg + lh:
            v.triangle.append((g, h))
    return v


# free groups -------------------------------------------------------------

def _free_mul(u: FreeWord, v: FreeWord) -> FreeWord:
    return free_reduce(u.letters + v.letters)


def free_length() -> LengthFunction:
    """Word length on a free group; handles are reduced ``FreeWord`` values."""
    return LengthFunction(
        tag="free-word-length",
        length=lambda w: len(free_reduce(w)),
        mul=_free_mul,
        inverse=lambda w: free_reduce(w).inverse(),
        identity=FreeWord(),
        is_identity=lambda w: not free_reduce(w),
        pow=power_word,
    )


def free_um_witness(radius: Optional[int] = None) -> UmWitness:
    # l(g^K) >= l(g) + (K - 1) * |cyclic core| and the core is nonempty
    return UmWitness(lambda r: math.ceil(r) + 1, "K_r = ceil(r) + 1", radius)
