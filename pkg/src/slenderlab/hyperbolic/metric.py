"""Exact word metric for free and C'(1/6) presentations.

Elements are found by breadth-first search over shortlex representatives.
For Dehn presentations two words are compared by Dehn-reducing
``u^-1 v``; to avoid quadratic comparisons each element carries a key built
from homomorphic images (abelianization, and matrices mod p when the relator
is a product of commutators).  Equal elements always have equal keys, so the
key only narrows the search and never decides equality on its own.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from math import gcd

from ..words import FreeWord, free_reduce
from .presentation import Presentation, StrategyError, _dehn, c16_check

DEFAULT_MAX_BALL = 250_000


class ResourceCapError(RuntimeError):
    pass


def max_ball_size() -> int:
    raw = os.environ.get("SLENDERLAB_MAX_BALL")
    return int(raw) if raw else DEFAULT_MAX_BALL


# integer lattice reduction for the abelianization key ---------------------

def _echelon(rows: list[list[int]]) -> list[tuple[int, list[int]]]:
    rows = [r[:] for r in rows if any(r)]
    out = []
    col, ncols = 0, len(rows[0]) if rows else 0
    while rows and col < ncols:
        live = [r for r in rows if r[col]]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            live = [r for r in live if r[col]]
        piv = live[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append((col, piv))
        rows = [r for r in rows if r is not piv and any(r)]
        col += 1
    return out


def _mat_mul(x: tuple, y: tuple, p: int) -> tuple:
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def _mat_inv(x: tuple, p: int) -> tuple:
    a, b, c, d = x  # determinant 1
    return (d % p, -b % p, -c % p, a % p)


def _random_sl2(rng: random.Random, p: int) -> tuple:
    while True:
        a, b, c = rng.randrange(p), rng.randrange(p), rng.randrange(p)
        if a:
            d = (1 + b * c) * pow(a, -1, p) % p
            return (a, b, c, d)


def _commutator_pairs(P: Presentation) -> list[tuple[int, int]] | None:
    if len(P.relators) != 1:
        return None
    r = P.relators[0].letters
    if len(r) % 4 or len(r) < 8:
        return None
    pairs = []
    for i in range(0, len(r), 4):
        x, y, xi, yi = r[i:i + 4]
        if xi != -x or yi != -y:
            return None
        pairs.append((x, y))
    used = [abs(c) for pair in pairs for c in pair]
    return pairs if len(set(used)) == len(used) else None


class _KeyMap:
    PRIMES = (251, 241, 239)

    def __init__(self, P: Presentation, seed: int = 20240917):
        self.rank = P.rank
        ech_rows = []
        for r in P.relators:
            v = [0] * P.rank
            for c in r.letters:
                v[abs(c) - 1] += 1 if c > 0 else -1
            ech_rows.append(v)
        self.lattice = _echelon(ech_rows) if P.rank else []
        self.mats: list[tuple[int, dict[int, tuple]]] = []
        pairs = _commutator_pairs(P)
        if pairs:
            rng = random.Random(seed)
            for p in self.PRIMES:
                ident = (1, 0, 0, 1)
                images = {i: ident for i in range(1, P.rank + 1)}
                A, B = _random_sl2(rng, p), _random_sl2(rng, p)
                h = _mat_mul(_mat_mul(B, A, p), _mat_mul(_mat_inv(B, p), _mat_inv(A, p), p), p)
                hi = _mat_inv(h, p)
                C = _mat_mul(_mat_mul(h, B, p), hi, p)
                D = _mat_mul(_mat_mul(h, A, p), hi, p)
                for (x, y), (X, Y) in zip(pairs[:2], ((A, B), (C, D))):
                    images[abs(x)] = X if x > 0 else _mat_inv(X, p)
                    images[abs(y)] = Y if y > 0 else _mat_inv(Y, p)
                full = dict(images)
                for i, m in images.items():
                    full[-i] = _mat_inv(m, p)
                self.mats.append((p, full))

    def _reduce_vec(self, v: list[int]) -> tuple[int, ...]:
        for col, row in self.lattice:
            q = v[col] // row[col]
            if q:
                for j in range(len(v)):
                    v[j] -= q * row[j]
        return tuple(v)

    def identity(self) -> tuple:
        return (tuple([0] * self.rank),) + tuple((1, 0, 0, 1) for _ in self.mats)

    def step(self, key: tuple, c: int) -> tuple:
        v = list(key[0])
        v[abs(c) - 1] += 1 if c > 0 else -1
        out = [self._reduce_vec(v)]
        for (p, imgs), m in zip(self.mats, key[1:]):
            out.append(_mat_mul(m, imgs[c], p))
        return tuple(out)

    def of(self, word: tuple[int, ...]) -> tuple:
        k = self.identity()
        for c in word:
            k = self.step(k, c)
        return k


@dataclass(frozen=True)
class LengthBound:
    value: int
    exact: bool


class WordMetric:
    """Word-problem strategy plus a lazily grown table of geodesic representatives.

    ``kind`` is ``"free"`` (free reduction; relators ignored only when there
    are none) or ``"dehn"`` (requires C'(1/6)).
    """

    def __init__(self, P: Presentation, kind: str | None = None, cap: int | None = None):
        if kind is None:
            kind = "free" if not P.relators else "dehn"
        if kind not in ("free", "dehn"):
            raise ValueError(f"unknown strategy {kind!r}")
        if kind == "free" and P.relators:
            raise StrategyError("free strategy requires a presentation without relators")
        if kind == "dehn" and P.relators and not c16_check(P).holds:
            raise StrategyError(f"presentation {P.name or ''} fails C'(1/6); Dehn strategy refused")
        self.P = P
        self.kind = kind
        self.cap = cap if cap is not None else max_ball_size()
        self._keys = _KeyMap(P) if kind == "dehn" else None
        self.reps: list[tuple[int, ...]] = [()]
        self.lengths: list[int] = [0]
        self._elem_keys: list = [self._key(())]
        self._buckets: dict = {self._elem_keys[0]: [0]}
        self._level_start = [0, 1]   # reps[_level_start[r]:_level_start[r+1]] have length r
        self.radius = 0

    # word problem ---------------------------------------------------------
    def normal(self, word) -> tuple[int, ...]:
        """Free-reduced (free) or Dehn-reduced (dehn) word; not canonical for dehn."""
        letters = word.letters if isinstance(word, FreeWord) else tuple(word)
        letters = free_reduce(letters).letters
        if self.kind == "dehn":
            letters = _dehn(self.P, letters)
        return letters

    def is_trivial(self, word) -> bool:
        return not self.normal(word)

    def equal(self, u, v) -> bool:
        u = u.letters if isinstance(u, FreeWord) else tuple(u)
        v = v.letters if isinstance(v, FreeWord) else tuple(v)
        return self.is_trivial(tuple(-c for c in reversed(u)) + v)

    def _key(self, word: tuple[int, ...]):
        if self._keys is None:
            return free_reduce(word).letters
        return self._keys.of(word)

    # table ----------------------------------------------------------------
    def extend_to(self, radius: int) -> None:
        letters = self.P.letters
        while self.radius < radius:
            start, stop = self._level_start[self.radius], self._level_start[self.radius + 1]
            new_len = self.radius + 1
            for idx in range(start, stop):
                rep = self.reps[idx]
                last = rep[-1] if rep else 0
                key = self._elem_keys[idx]
                for c in letters:
                    if c == -last:
                        continue
                    cand = rep + (c,)
                    ckey = (self._keys.step(key, c) if self._keys is not None else cand)
                    bucket = self._buckets.get(ckey)
                    if bucket is not None and (self._keys is None or any(self.equal(self.reps[j], cand) for j in bucket)):
                        continue
                    if len(self.reps) >= self.cap:
                        raise ResourceCapError(
                            f"ball exceeds {self.cap} elements at radius {new_len}; "
                            "raise SLENDERLAB_MAX_BALL to allow more")
                    self._buckets.setdefault(ckey, []).append(len(self.reps))
                    self.reps.append(cand)
                    self.lengths.append(new_len)
                    self._elem_keys.append(ckey)
            self._level_start.append(len(self.reps))
            self.radius = new_len

    def find(self, word, radius: int | None = None) -> int | None:
        """Index of the element represented by ``word`` if its length is at most ``radius``."""
        letters = word.letters if isinstance(word, FreeWord) else tuple(word)
        if radius is None:
            radius = self.radius
        self.extend_to(radius)
        key = self._key(letters)
        for j in self._buckets.get(key, ()):
            if self.lengths[j] > radius:
                continue
            if self._keys is None or self.equal(self.reps[j], letters):
                return j
        return None

    def length(self, word) -> int:
        """Exact ``l_X`` of the element represented by ``word``."""
        upper = len(self.normal(word))
        if self.kind == "free":
            return upper
        j = self.find(word, upper)
        if j is None:  # pragma: no cover - Dehn output is a word for the same element
            raise AssertionError("element not found within its Dehn-reduced length")
        return self.lengths[j]

    def at_most(self, word, r: int) -> bool:
        """Whether ``l_X(word) <= r``."""
        n = self.normal(word)
        if len(n) <= r:
            return True
        if self.kind == "free":
            return False
        return self.find(n, r) is not None

    def geodesic(self, word) -> tuple[int, ...]:
        """Shortlex-least geodesic word for the element."""
        if self.kind == "free":
            return self.normal(word)
        j = self.find(word, len(self.normal(word)))
        return self.reps[j]
