"""Graph products of groups: reduced syllable words, canonical forms and the
kernel of the map onto the direct sum.

Vertex groups are oracles with canonical, hashable element handles, so
vertex-group equality is plain ``==``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Hashable, NamedTuple, Sequence

from .words import free_reduce, parse_tokens


# vertex groups -----------------------------------------------------------

class VertexGroup:
    name = "?"
    identity: Hashable = None

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def validate(self, a) -> None:
        pass

    def random(self, rng: random.Random):
        """A random nontrivial element."""
        raise NotImplementedError

    def is_identity(self, a) -> bool:
        return a == self.identity

    def format(self, a) -> str:
        return str(a)

    def __repr__(self) -> str:
        return self.name


class Integers(VertexGroup):
    name = "Z"
    identity = 0

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def validate(self, a):
        if not isinstance(a, int):
            raise TypeError(f"{a!r} is not an integer")

    def random(self, rng):
        return rng.choice((-1, 1)) * rng.randint(1, 3)


class Cyclic(VertexGroup):
    identity = 0

    def __init__(self, m: int):
        if m < 2:
            raise ValueError("Z/m needs m >= 2")
        self.m = m
        self.name = f"Z/{m}"

    def mul(self, a, b):
        return (a + b) % self.m

    def inv(self, a):
        return -a % self.m

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < self.m:
            raise ValueError(f"{a!r} is not a residue mod {self.m}")

    def random(self, rng):
        return rng.randrange(1, self.m)


class Free(VertexGroup):
    """Free group of rank k; handles are reduced tuples of letter codes."""

    identity = ()

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("free vertex group needs rank >= 1")
        self.k = k
        self.name = f"F{k}"

    def mul(self, a, b):
        return free_reduce(a + b).letters

    def inv(self, a):
        return tuple(-c for c in reversed(a))

    def validate(self, a):
        if not isinstance(a, tuple) or free_reduce(a).letters != a:
            raise ValueError(f"{a!r} is not a reduced word")
        if any(not 1 <= abs(c) <= self.k for c in a):
            raise ValueError(f"{a!r} uses letters outside F{self.k}")

    def random(self, rng):
        while True:
            n = rng.randint(1, 3)
            w = free_reduce(tuple(rng.choice((1, -1)) * rng.randint(1, self.k) for _ in range(n))).letters
            if w:
                return w


class Table(VertexGroup):
    """Finite group from a multiplication table on ``0..n-1``."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = "table"):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square")
        ident = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if len(ident) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity = ident[0]
        self._inv = {}
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(inv) != 1:
                raise ValueError(f"element {x} has no unique inverse")
            self._inv[x] = inv[0]
        self.name = name

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def validate(self, a):
        if not isinstance(a, int) or not 0 <= a < len(self.table):
            raise ValueError(f"{a!r} is not a table element")

    def random(self, rng):
        return rng.choice([x for x in range(len(self.table)) if x != self.identity])

    @classmethod
    def load(cls, path: str | Path) -> "Table":
        rows = [[int(t) for t in line.split()] for line in Path(path).read_text().splitlines() if line.strip()]
        return cls(rows, f"table:{Path(path).name}")


def vertex_group(spec: str, base: Path | None = None) -> VertexGroup:
    if spec == "Z":
        return Integers()
    if spec.startswith("Z/"):
        return Cyclic(int(spec[2:]))
    if spec.startswith("F") and spec[1:].isdigit():
        return Free(int(spec[1:]))
    if spec.startswith("table:"):
        path = Path(spec[6:])
        if base is not None and not path.is_absolute():
            path = base / path
        return Table.load(path)
    raise ValueError(f"unknown vertex group {spec!r}")


# graph products ----------------------------------------------------------

class Syllable(NamedTuple):
    vertex: int
    element: Any


GPWord = tuple  # tuple[Syllable, ...]


@dataclass(frozen=True)
class GraphProduct:
    groups: tuple[VertexGroup, ...]
    edges: frozenset = frozenset()
    names: tuple[str, ...] = ()
    adjacency: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.groups)
        edges = set()
        for e in self.edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range")
            edges.add(frozenset((u, v)))
        object.__setattr__(self, "edges", frozenset(edges))
        adj = [set() for _ in range(n)]
        for e in edges:
            u, v = tuple(e)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "adjacency", tuple(frozenset(a) for a in adj))
        if not self.names:
            object.__setattr__(self, "names", tuple(str(i) for i in range(n)))

    @classmethod
    def build(cls, groups: Sequence[VertexGroup], edges: Sequence[tuple[int, int]] = ()) -> "GraphProduct":
        return cls(tuple(groups), frozenset(frozenset(e) for e in edges))

    def commute(self, s: Syllable, t: Syllable) -> bool:
        """Nontrivial syllables from different vertices commute iff the vertices are adjacent."""
        return t.vertex in self.adjacency[s.vertex]

    def syl(self, vertex: int, element) -> Syllable:
        return Syllable(vertex, element)

    def inverse(self, w: Sequence[Syllable]) -> tuple[Syllable, ...]:
        return tuple(Syllable(s.vertex, self.groups[s.vertex].inv(s.element)) for s in reversed(w))

    def format(self, w: Sequence[Syllable]) -> str:
        return " ".join(f"{self.names[s.vertex]}:{self.groups[s.vertex].format(s.element)}" for s in w) or "1"

    # file format --------------------------------------------------------
    @classmethod
    def parse(cls, text: str, base: Path | None = None) -> "GraphProduct":
        names: list[str] = []
        groups: list[VertexGroup] = []
        edges = []
        for raw in text.splitlines():
            parts = raw.split("#", 1)[0].split()
            if not parts:
                continue
            if parts[0] == "vertex" and len(parts) == 3:
                if parts[1] in names:
                    raise ValueError(f"duplicate vertex {parts[1]}")
                names.append(parts[1])
                groups.append(vertex_group(parts[2], base))
            elif parts[0] == "edge" and len(parts) == 3:
                edges.append((parts[1], parts[2]))
            else:
                raise ValueError(f"bad graph-product line {raw!r}")
        index = {name: i for i, name in enumerate(names)}
        try:
            pairs = [frozenset((index[u], index[v])) for u, v in edges]
        except KeyError as exc:
            raise ValueError(f"edge mentions unknown vertex {exc.args[0]}") from None
        return cls(tuple(groups), frozenset(pairs), tuple(names))

    @classmethod
    def load(cls, path: str | Path) -> "GraphProduct":
        p = Path(path)
        return cls.parse(p.read_text(), p.parent)


def _check(G: GraphProduct, w: Sequence[Syllable]) -> None:
    for s in w:
        if not 0 <= s.vertex < len(G.groups):
            raise ValueError(f"unknown vertex {s.vertex}")
        G.groups[s.vertex].validate(s.element)


def normalize(G: GraphProduct, w: Sequence[Syllable]) -> tuple[Syllable, ...]:
    """Reduced word: delete identities and merge syllables that can meet."""
    _check(G, w)
    out: list[Syllable] = []
    for s in w:
        grp = G.groups[s.vertex]
        if grp.is_identity(s.element):
            continue
        adj = G.adjacency[s.vertex]
        j = len(out) - 1
        while j >= 0 and out[j].vertex != s.vertex and out[j].vertex in adj:
            j -= 1
        if j >= 0 and out[j].vertex == s.vertex:
            merged = grp.mul(out[j].element, s.element)
            if grp.is_identity(merged):
                del out[j]
            else:
                out[j] = Syllable(s.vertex, merged)
        else:
            out.append(Syllable(s.vertex, s.element))
    return tuple(out)


def gp_length(G: GraphProduct, w: Sequence[Syllable]) -> int:
    return len(normalize(G, w))


def is_reduced(G: GraphProduct, w: Sequence[Syllable]) -> bool:
    for i, s in enumerate(w):
        if G.groups[s.vertex].is_identity(s.element):
            return False
        adj = G.adjacency[s.vertex]
        for j in range(i + 1, len(w)):
            if w[j].vertex == s.vertex:
                return False
            if w[j].vertex not in adj:
                break
    return True


def canonical_form(G: GraphProduct, w: Sequence[Syllable]) -> tuple[Syllable, ...]:
    """Least-vertex-first representative of the shuffle class of ``normalize(w)``."""
    rest = list(normalize(G, w))
    out = []
    while rest:
        best = None
        for i, s in enumerate(rest):
            if all(G.commute(s, rest[t]) for t in range(i)):
                if best is None or s.vertex < rest[best].vertex:
                    best = i
        out.append(rest.pop(best))
    return tuple(out)


def canonical_eq(G: GraphProduct, u: Sequence[Syllable], v: Sequence[Syllable]) -> bool:
    return canonical_form(G, u) == canonical_form(G, v)


def sigma(G: GraphProduct, w: Sequence[Syllable]) -> dict[int, Any]:
    _check(G, w)
    out = {v: grp.identity for v, grp in enumerate(G.groups)}
    for s in w:
        out[s.vertex] = G.groups[s.vertex].mul(out[s.vertex], s.element)
    return out


def sigma_trivial(G: GraphProduct, w: Sequence[Syllable]) -> bool:
    return all(G.groups[v].is_identity(x) for v, x in sigma(G, w).items())


# sampling ----------------------------------------------------------------

def random_word(G: GraphProduct, rng: random.Random, length: int) -> tuple[Syllable, ...]:
    n = len(G.groups)
    out = []
    for _ in range(length):
        v = rng.randrange(n)
        out.append(Syllable(v, G.groups[v].random(rng)))
    return tuple(out)


def random_shuffle(G: GraphProduct, w: Sequence[Syllable], rng: random.Random, steps: int = 20) -> tuple[Syllable, ...]:
    """Apply random permitted swaps of adjacent commuting syllables."""
    w = list(w)
    for _ in range(steps):
        if len(w) < 2:
            break
        i = rng.randrange(len(w) - 1)
        if w[i].vertex != w[i + 1].vertex and G.commute(w[i], w[i + 1]):
            w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def random_split(G: GraphProduct, w: Sequence[Syllable], rng: random.Random, count: int = 3) -> tuple[Syllable, ...]:
    """Split random syllables ``x`` into ``y (y^-1 x)``: the inverse of a merge."""
    w = list(w)
    for _ in range(count):
        if not w:
            break
        i = rng.randrange(len(w))
        s = w[i]
        grp = G.groups[s.vertex]
        y = grp.random(rng)
        w[i:i + 1] = [Syllable(s.vertex, y), Syllable(s.vertex, grp.mul(grp.inv(y), s.element))]
    return tuple(w)


class KernelSample(NamedTuple):
    word: tuple
    nontrivial: bool


def sample_kernel(G: GraphProduct, seed: int, count: int, max_length: int = 8) -> list[KernelSample]:
    """Random words corrected into ``ker(sigma)``.

    Each vertex with a nontrivial image gets one correcting syllable at a
    random position, so samples are not biased toward end-corrected words.
    """
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        w = list(random_word(G, rng, rng.randint(1, max_length)))
        for v, grp in enumerate(G.groups):
            total = sigma(G, w)[v]
            if grp.is_identity(total):
                continue
            pos = rng.randint(0, len(w))
            before, after = grp.identity, grp.identity
            for i, s in enumerate(w):
                if s.vertex == v:
                    if i < pos:
                        before = grp.mul(before, s.element)
                    else:
                        after = grp.mul(after, s.element)
            fix = grp.mul(grp.inv(before), grp.inv(after))
            w.insert(pos, Syllable(v, fix))
        g = normalize(G, w)
        out.append(KernelSample(g, bool(g)))
    return out


def random_graph_product(rng: random.Random, max_vertices: int = 5,
                         kinds: Sequence[str] = ("Z", "Z/4", "F2")) -> GraphProduct:
    n = rng.randint(2, max_vertices)
    groups = [vertex_group(rng.choice(kinds)) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    return GraphProduct.build(groups, edges)


# decomposition of kernel elements ------------------------------------------

class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricDecomposition:
    w2: tuple
    w1: tuple
    w0: tuple
    w1_rear: tuple      # syllables paired with w1, in word order
    h: tuple            # h_t = (partner of w1[t]) * w1[t], all nontrivial

    def word(self, G: GraphProduct) -> tuple:
        """``w2 w1 w0 w1' w2^-1``."""
        return self.w2 + self.w1 + self.w0 + self.w1_rear + G.inverse(self.w2)

    def square_word(self, G: GraphProduct) -> tuple:
        """``w2 w1 w0 w1'' w0 w1' w2^-1``, the reduced word the growth argument predicts for g^2."""
        middle = tuple(Syllable(s.vertex, h) for s, h in zip(self.w1, self.h))
        return self.w2 + self.w1 + self.w0 + middle + self.w0 + self.w1_rear + G.inverse(self.w2)


def _front_movable(G, seq, i, extra=()) -> bool:
    s = seq[i]
    return all(G.commute(s, t) for t in extra) and all(G.commute(s, seq[t]) for t in range(i))


def _rear_movable(G, seq, j, extra=()) -> bool:
    s = seq[j]
    return all(G.commute(s, t) for t in extra) and all(G.commute(s, seq[t]) for t in range(j + 1, len(seq)))


def symmetric_decomposition(G: GraphProduct, g: Sequence[Syllable]) -> SymmetricDecomposition:
    g = normalize(G, g)
    if not g:
        raise DecompositionError("g is trivial")
    if not sigma_trivial(G, g):
        raise DecompositionError("g is not in the kernel of sigma")

    # phase 1: peel mutually inverse pairs movable to the two ends
    mid = list(g)
    w2 = []
    while True:
        pair = None
        for i in range(len(mid)):
            if not _front_movable(G, mid, i):
                continue
            grp = G.groups[mid[i].vertex]
            for j in range(len(mid) - 1, i, -1):
                if (mid[j].vertex == mid[i].vertex and _rear_movable(G, mid, j)
                        and grp.is_identity(grp.mul(mid[i].element, mid[j].element))):
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j = pair
        w2.append(mid[i])
        del mid[j], mid[i]

    # phase 2: peel same-group pairs; front picks must commute with earlier picks
    w1: list[Syllable] = []
    rear: list[Syllable] = []
    while True:
        pair = None
        for i in range(len(mid)):
            if not _front_movable(G, mid, i, w1):
                continue
            for j in range(len(mid) - 1, i, -1):
                if mid[j].vertex == mid[i].vertex and _rear_movable(G, mid, j, rear):
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            break
        i, j = pair
        w1.append(mid[i])
        rear.insert(0, mid[j])
        del mid[j], mid[i]

    p = len(w1)
    h = []
    for t in range(p):
        grp = G.groups[w1[t].vertex]
        ht = grp.mul(rear[p - 1 - t].element, w1[t].element)
        if grp.is_identity(ht):
            raise DecompositionError(f"h_{t} is trivial; phase 1 should have removed this pair")
        h.append(ht)
    if not mid:
        raise DecompositionError("middle segment w0 is empty")
    dec = SymmetricDecomposition(tuple(w2), tuple(w1), tuple(mid), tuple(rear), tuple(h))
    rebuilt = dec.word(G)
    if not is_reduced(G, rebuilt):
        raise DecompositionError("rearranged word is no longer reduced")
    if not canonical_eq(G, rebuilt, g):
        raise DecompositionError("rearranged word differs from g")
    return dec


@dataclass(frozen=True)
class SquareGrowth:
    length: int
    square_length: int
    identity_value: int     # 2 l(w2) + 3 l(w1) + 2 l(w0)
    decomposition: SymmetricDecomposition
    square_word_matches: bool   # predicted word is reduced and equals g^2

    @property
    def grows(self) -> bool:
        return self.square_length > self.length

    @property
    def identity_holds(self) -> bool:
        return self.square_length == self.identity_value


def square_growth_check(G: GraphProduct, g: Sequence[Syllable]) -> SquareGrowth:
    g = normalize(G, g)
    dec = symmetric_decomposition(G, g)
    sq = normalize(G, g + g)
    predicted = dec.square_word(G)
    matches = is_reduced(G, predicted) and canonical_eq(G, predicted, sq)
    value = 2 * len(dec.w2) + 3 * len(dec.w1) + 2 * len(dec.w0)
    return SquareGrowth(len(g), len(sq), value, dec, matches)


def parse_word(G: GraphProduct, text: str) -> tuple[Syllable, ...]:
    """Parse ``"u:2 v:-1 w:a0 A1"``-style words: ``<vertex>:<element>`` tokens.

    Free-group elements use letter tokens joined by commas, e.g. ``w:a0,A1``.
    """
    index = {name: i for i, name in enumerate(G.names)}
    out = []
    for tok in text.split():
        name, _, elem = tok.partition(":")
        v = index[name]
        grp = G.groups[v]
        if isinstance(grp, Free):
            x = parse_tokens(elem.replace(",", " "))
        else:
            x = int(elem)
        grp.validate(x)
        out.append(Syllable(v, x))
    return tuple(out)
