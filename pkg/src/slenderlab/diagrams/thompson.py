"""Thompson's group F two ways: tree pairs, and diagrams over ``x^2 -> x``.

Trees are nested tuples: ``None`` is a leaf and ``(left, right)`` a caret.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Optional, Union

from .core import MERGE, Diagram, d_compose, d_inverse, d_reduce, epsilon

Tree = Optional[tuple]
LEAF: Tree = None


def leaves(t: Tree) -> int:
    return 1 if t is None else leaves(t[0]) + leaves(t[1])


def carets(t: Tree) -> int:
    return 0 if t is None else 1 + carets(t[0]) + carets(t[1])


def left_comb(n_leaves: int) -> Tree:
    t = LEAF
    for _ in range(n_leaves - 1):
        t = (t, LEAF)
    return t


def right_comb(n_leaves: int) -> Tree:
    t = LEAF
    for _ in range(n_leaves - 1):
        t = (LEAF, t)
    return t


def tree_union(s: Tree, t: Tree) -> Tree:
    if s is None:
        return t
    if t is None:
        return s
    return (tree_union(s[0], t[0]), tree_union(s[1], t[1]))


def hanging(big: Tree, small: Tree) -> list[Tree]:
    """Subtrees of ``big`` hanging below each leaf of ``small`` (``small`` must be a rooted subtree)."""
    if small is None:
        return [big]
    if big is None:
        raise ValueError("tree is not a refinement")
    return hanging(big[0], small[0]) + hanging(big[1], small[1])


def graft(t: Tree, parts: list[Tree]) -> Tree:
    it = iter(parts)

    def go(s):
        if s is None:
            return next(it)
        return (go(s[0]), go(s[1]))

    out = go(t)
    if next(it, "end") != "end":
        raise ValueError("too many subtrees for graft")
    return out


def _leaf_carets(t: Tree) -> set[int]:
    """Leaf indices ``i`` where leaves ``i, i+1`` hang from one caret."""
    out = set()

    def go(s, start):
        if s is None:
            return 1
        if s[0] is None and s[1] is None:
            out.add(start)
        n = go(s[0], start)
        return n + go(s[1], start + n)

    go(t, 0)
    return out


def _collapse(t: Tree, i: int) -> Tree:
    def go(s, start):
        if s is None:
            return s, 1
        if s == (None, None) and start == i:
            return None, 2
        a, n = go(s[0], start)
        b, m = go(s[1], start + n)
        return (a, b), n + m

    return go(t, 0)[0]


@dataclass(frozen=True)
class TreePair:
    domain: Tree
    range: Tree

    def __post_init__(self) -> None:
        if leaves(self.domain) != leaves(self.range):
            raise ValueError("trees of a pair need equal leaf counts")

    @property
    def carets(self) -> int:
        return carets(self.domain) + carets(self.range)

    def reduced(self) -> "TreePair":
        d, r = self.domain, self.range
        while True:
            common = _leaf_carets(d) & _leaf_carets(r)
            if not common:
                return TreePair(d, r)
            i = min(common)
            d, r = _collapse(d, i), _collapse(r, i)

    def is_reduced(self) -> bool:
        return not (_leaf_carets(self.domain) & _leaf_carets(self.range))

    def inverse(self) -> "TreePair":
        return TreePair(self.range, self.domain)

    def diagram(self) -> Diagram:
        """``split(domain)`` followed by ``merge(range)``."""
        return d_compose(split_diagram(self.domain), d_inverse(split_diagram(self.range)))


IDENTITY = TreePair(LEAF, LEAF)


def treepair_mul(p: TreePair, q: TreePair) -> TreePair:
    """``p`` then ``q``, matching the diagram product ``p.diagram() o q.diagram()``."""
    t = tree_union(p.range, q.domain)
    d = graft(p.domain, hanging(t, p.range))
    r = graft(q.range, hanging(t, q.domain))
    return TreePair(d, r).reduced()


def split_diagram(t: Tree) -> Diagram:
    """The diagram with top ``x`` and bottom ``x^leaves`` that splits along ``t``."""
    steps = []

    def go(s, pos):
        if s is None:
            return 1
        steps.append((pos, MERGE.id, False))
        n = go(s[0], pos)
        return n + go(s[1], pos + n)

    go(t, 0)
    return Diagram.build("x", steps)


def generator(n: int) -> TreePair:
    """``x_n``: a right vine of ``n`` carets above the ``x_0`` pattern."""
    d, r = ((LEAF, LEAF), LEAF), (LEAF, (LEAF, LEAF))
    for _ in range(n):
        d, r = (LEAF, d), (LEAF, r)
    return TreePair(d, r)


_TOKEN = re.compile(r"([xX])(\d+)(?:\^(-?\d+))?")


def parse_f_word(text: str) -> list[tuple[int, int]]:
    """Tokens like ``x0``, ``X1`` (inverse), ``x0^-1``, ``x1^3``; returns ``(n, exponent)`` pairs."""
    out = []
    for tok in text.replace("*", " ").split():
        m = _TOKEN.fullmatch(tok)
        if not m:
            raise ValueError(f"bad F token {tok!r}")
        e = int(m.group(3)) if m.group(3) is not None else 1
        if m.group(1) == "X":
            e = -e
        out.append((int(m.group(2)), e))
    return out


def f_treepair(word: Union[str, list]) -> TreePair:
    pairs = parse_f_word(word) if isinstance(word, str) else word
    acc = IDENTITY
    for n, e in pairs:
        g = generator(n) if e > 0 else generator(n).inverse()
        for _ in range(abs(e)):
            acc = treepair_mul(acc, g)
    return acc


def f_element(word: Union[str, list]) -> Diagram:
    """Reduced diagram of an element of F given as a word in ``x_n`` and inverses."""
    tp = f_treepair(word)
    if tp == IDENTITY:
        return epsilon("x")
    return d_reduce(tp.diagram())


def theta() -> Diagram:
    return f_element("x0")


def random_f_word(rng: random.Random, length: int, gens: int = 2) -> list[tuple[int, int]]:
    return [(rng.randrange(gens), rng.choice((1, -1))) for _ in range(length)]


def word_diagram(word: list[tuple[int, int]]) -> Diagram:
    """Unreduced composite of the generator diagrams: lots of dipoles."""
    d = epsilon("x")
    for n, e in word:
        g = generator(n).diagram()
        g = g if e > 0 else d_inverse(g)
        for _ in range(abs(e)):
            d = d_compose(d, g)
    return d
