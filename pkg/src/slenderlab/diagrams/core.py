"""Diagrams over a semigroup presentation, stored as sequences of positioned cells.

A diagram is a top word plus a list of atoms.  Each atom rewrites the running
frontier at a fixed offset using one rule, either forward (rule top -> rule
bottom) or inverted.  Reduction works on the planar cell graph obtained by
giving every edge of the frontier an id.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence


Word = tuple  # tuple of single-character letters


def as_word(w: str | Sequence[str]) -> Word:
    if isinstance(w, str):
        return tuple(w.replace(" ", ""))
    return tuple(w)


@dataclass(frozen=True)
class Rule:
    id: str
    top: Word
    bottom: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "top", as_word(self.top))
        object.__setattr__(self, "bottom", as_word(self.bottom))
        if not self.top or not self.bottom:
            raise ValueError(f"rule {self.id}: both sides must be nonempty")
        if any(len(c) != 1 for c in self.top + self.bottom):
            raise ValueError(f"rule {self.id}: letters are single characters")

    def source(self, forward: bool) -> Word:
        return self.top if forward else self.bottom

    def target(self, forward: bool) -> Word:
        return self.bottom if forward else self.top


MERGE = Rule("m", "xx", "x")
F_RULES = (MERGE,)


class Atom(NamedTuple):
    left: int
    rule: str
    forward: bool
    right: int


class DiagramError(ValueError):
    pass


def _rule_map(rules: Iterable[Rule]) -> dict[str, Rule]:
    return {r.id: r for r in rules}


def _replay(top: Word, atoms: Sequence[Atom], rules: dict[str, Rule]) -> Word:
    frontier = list(top)
    for i, a in enumerate(atoms):
        try:
            rule = rules[a.rule]
        except KeyError:
            raise DiagramError(f"atom {i}: unknown rule {a.rule!r}") from None
        src, dst = rule.source(a.forward), rule.target(a.forward)
        if a.left < 0 or a.right < 0 or a.left + len(src) + a.right != len(frontier):
            raise DiagramError(f"atom {i}: pads {a.left}/{a.right} do not fit a frontier of length {len(frontier)}")
        if tuple(frontier[a.left:a.left + len(src)]) != src:
            raise DiagramError(f"atom {i}: rule {a.rule} does not apply at offset {a.left}")
        frontier[a.left:a.left + len(src)] = dst
    return tuple(frontier)


@dataclass(frozen=True)
class Diagram:
    top: Word
    atoms: tuple[Atom, ...] = ()
    rules: tuple[Rule, ...] = F_RULES
    bottom: Word = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "top", as_word(self.top))
        object.__setattr__(self, "atoms", tuple(Atom(*a) for a in self.atoms))
        object.__setattr__(self, "bottom", _replay(self.top, self.atoms, _rule_map(self.rules)))

    @classmethod
    def build(cls, top, steps: Iterable[tuple[int, str, bool]], rules: tuple[Rule, ...] = F_RULES) -> "Diagram":
        """Build from ``(left, rule, forward)`` triples; right pads are filled in."""
        rmap = _rule_map(rules)
        frontier = len(as_word(top))
        atoms = []
        for left, rid, fwd in steps:
            r = rmap[rid]
            src, dst = len(r.source(fwd)), len(r.target(fwd))
            atoms.append(Atom(left, rid, fwd, frontier - left - src))
            frontier += dst - src
        return cls(top, tuple(atoms), rules)

    @property
    def cells(self) -> int:
        return len(self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def rule_map(self) -> dict[str, Rule]:
        return _rule_map(self.rules)

    def __str__(self) -> str:
        return dumps(self).strip().replace("\n", "; ")


def epsilon(word, rules: tuple[Rule, ...] = F_RULES) -> Diagram:
    """The trivial diagram on ``word``; an int gives ``x^n``."""
    if isinstance(word, int):
        word = "x" * word
    return Diagram(as_word(word), (), rules)


def cell(rule: Rule = MERGE, forward: bool = True, rules: tuple[Rule, ...] | None = None) -> Diagram:
    rules = rules or (rule,)
    return Diagram(rule.source(forward), (Atom(0, rule.id, forward, 0),), rules)


# the three operations ---------------------------------------------------

def _same_rules(d0: Diagram, d1: Diagram) -> None:
    if d0.rule_map() != d1.rule_map():
        raise DiagramError("diagrams use different rule sets")


def d_sum(d0: Diagram, d1: Diagram) -> Diagram:
    _same_rules(d0, d1)
    w0, w1 = len(d1.top), len(d0.bottom)
    atoms = [a._replace(right=a.right + w0) for a in d0.atoms]
    atoms += [a._replace(left=a.left + w1) for a in d1.atoms]
    return Diagram(d0.top + d1.top, tuple(atoms), d0.rules)


def d_sum_all(parts: Iterable[Diagram]) -> Diagram:
    parts = list(parts)
    if not parts:
        raise ValueError("empty sum")
    out = parts[0]
    for d in parts[1:]:
        out = d_sum(out, d)
    return out


def d_compose(d0: Diagram, d1: Diagram) -> Diagram:
    _same_rules(d0, d1)
    if d0.bottom != d1.top:
        raise DiagramError(f"bottom {''.join(d0.bottom)!r} does not match top {''.join(d1.top)!r}")
    return Diagram(d0.top, d0.atoms + d1.atoms, d0.rules)


def d_compose_all(parts: Iterable[Diagram]) -> Diagram:
    parts = list(parts)
    out = parts[0]
    for d in parts[1:]:
        out = d_compose(out, d)
    return out


def d_inverse(d: Diagram) -> Diagram:
    atoms = tuple(a._replace(forward=not a.forward) for a in reversed(d.atoms))
    return Diagram(d.bottom, atoms, d.rules)


# cell graph and reduction ------------------------------------------------

@dataclass
class _Cell:
    rule: str
    forward: bool
    top: list[int]
    bottom: list[int]


class _CellGraph:
    def __init__(self, d: Diagram):
        self.word = d.top
        self.rules = d.rules
        self.labels: dict[int, str] = {}
        frontier = []
        for c in d.top:
            frontier.append(self._edge(c))
        self.top = list(frontier)
        self.cells: dict[int, _Cell] = {}
        self.consumer: dict[int, int] = {}  # edge -> cell id; absent means bottom boundary
        rmap = d.rule_map()
        for i, a in enumerate(d.atoms):
            r = rmap[a.rule]
            n = len(r.source(a.forward))
            used = frontier[a.left:a.left + n]
            made = [self._edge(c) for c in r.target(a.forward)]
            frontier[a.left:a.left + n] = made
            self.cells[i] = _Cell(a.rule, a.forward, used, made)
            for e in used:
                self.consumer[e] = i
        self.bottom = frontier

    def _edge(self, label: str) -> int:
        e = len(self.labels)
        self.labels[e] = label
        return e

    def dipoles(self) -> list[tuple[int, int]]:
        out = []
        for i, c in self.cells.items():
            j = self.consumer.get(c.bottom[0])
            if j is None:
                continue
            b = self.cells[j]
            if b.top == c.bottom and b.rule == c.rule and b.forward != c.forward:
                out.append((i, j))
        return out

    def eliminate(self, i: int, j: int) -> None:
        a, b = self.cells.pop(i), self.cells.pop(j)
        for eb, ea in zip(b.bottom, a.top):
            k = self.consumer.pop(eb, None)
            if k is None:
                self.bottom[self.bottom.index(eb)] = ea
                self.consumer.pop(ea, None)
            else:
                cell_k = self.cells[k]
                cell_k.top[cell_k.top.index(eb)] = ea
                self.consumer[ea] = k
        for e in a.bottom:
            self.consumer.pop(e, None)

    def to_diagram(self) -> Diagram:
        """Leftmost-applicable-cell-first serialization; canonical for the cell graph."""
        frontier = list(self.top)
        remaining = dict(self.cells)
        on_frontier = set(frontier)
        atoms = []
        while remaining:
            best = None
            for cid, c in remaining.items():
                if all(e in on_frontier for e in c.top):
                    pos = frontier.index(c.top[0])
                    if best is None or pos < best[0]:
                        best = (pos, cid)
            if best is None:
                raise DiagramError("cell graph has no applicable cell")
            pos, cid = best
            c = remaining.pop(cid)
            if frontier[pos:pos + len(c.top)] != c.top:
                raise DiagramError("cell top is not contiguous on the frontier")
            frontier[pos:pos + len(c.top)] = c.bottom
            on_frontier.difference_update(c.top)
            on_frontier.update(c.bottom)
            atoms.append(Atom(pos, c.rule, c.forward, len(frontier) - len(c.bottom) - pos))
        return Diagram(self.word, tuple(atoms), self.rules)


def canonical(d: Diagram) -> Diagram:
    """Same cells, atoms listed leftmost-first; equal for isotopic diagrams."""
    return _CellGraph(d).to_diagram()


def d_reduce(d: Diagram, rng: random.Random | None = None) -> Diagram:
    """Remove dipoles until none remain.

    With ``rng`` the dipole eliminated at each step is chosen at random,
    which the confluence tests use to vary the elimination order.
    """
    g = _CellGraph(d)
    while True:
        found = g.dipoles()
        if not found:
            break
        i, j = rng.choice(found) if rng is not None else found[0]
        g.eliminate(i, j)
    return g.to_diagram()


def is_reduced(d: Diagram) -> bool:
    return not _CellGraph(d).dipoles()


def d_length(d: Diagram) -> int:
    """``l(d)``: the number of cells of the equivalent reduced diagram."""
    return d_reduce(d).cells


def d_equal(d0: Diagram, d1: Diagram) -> bool:
    """Equality in the diagram group: same reduced diagram."""
    return d0.top == d1.top and d0.bottom == d1.bottom and d_reduce(d0) == d_reduce(d1)


def d_mul(d0: Diagram, d1: Diagram) -> Diagram:
    return d_reduce(d_compose(d0, d1))


def d_power(d: Diagram, k: int) -> Diagram:
    """Reduced ``d^k``; ``d`` must have equal top and bottom words."""
    if d.top != d.bottom:
        raise DiagramError("powers need top == bottom")
    if k < 0:
        d, k = d_inverse(d), -k
    if k == 0:
        return epsilon(d.top, d.rules)
    return d_reduce(d_compose_all([d] * k))


# random diagrams --------------------------------------------------------

def random_diagram(rng: random.Random, cells: int, top_len: int = 1,
                   max_width: int = 8) -> Diagram:
    """Random sequence of merges and splits over the single-letter alphabet."""
    width = top_len
    steps = []
    for _ in range(cells):
        can_merge = width >= 2
        can_split = width < max_width
        if can_merge and (not can_split or rng.random() < 0.5):
            steps.append((rng.randrange(width - 1), MERGE.id, True))
            width -= 1
        else:
            steps.append((rng.randrange(width), MERGE.id, False))
            width += 1
    return Diagram.build("x" * top_len, steps)


# text format ------------------------------------------------------------

def dumps(d: Diagram) -> str:
    lines = []
    if d.rules != F_RULES:
        lines += [f"rule {r.id} {''.join(r.top)} {''.join(r.bottom)}" for r in d.rules]
    lines.append(f"top: {''.join(d.top)}")
    lines += [f"pad={a.left} rule={a.rule} dir={'+' if a.forward else '-'}" for a in d.atoms]
    return "\n".join(lines) + "\n"


def parse(text: str) -> Diagram:
    rules = []
    top = None
    steps = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("rule "):
            _, rid, t, b = line.split()
            rules.append(Rule(rid, t, b))
        elif line.startswith("top:"):
            top = line[4:].strip()
        else:
            fields = dict(part.split("=", 1) for part in line.split())
            if set(fields) != {"pad", "rule", "dir"}:
                raise DiagramError(f"bad atom line {raw!r}")
            direction = fields["dir"].replace("−", "-")
            if direction not in "+-" or len(direction) != 1:
                raise DiagramError(f"bad direction in {raw!r}")
            steps.append((int(fields["pad"]), fields["rule"], direction == "+"))
    if top is None:
        raise DiagramError("diagram text lacks a 'top:' line")
    return Diagram.build(top, steps, tuple(rules) or F_RULES)


def load(path: str | Path) -> Diagram:
    return parse(Path(path).read_text())


def save(d: Diagram, path: str | Path) -> None:
    Path(path).write_text(dumps(d))
