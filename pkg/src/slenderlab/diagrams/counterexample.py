"""An element of F whose n-th power is shorter than itself in the cell-count length."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (MERGE, _CellGraph, Diagram, DiagramError, cell, d_compose, d_compose_all, d_inverse,
                   d_power, d_reduce, d_sum_all, epsilon, is_reduced)
from .thompson import LEAF, left_comb, split_diagram, theta


@dataclass(frozen=True)
class CounterexampleParams:
    n: int
    k: int
    k1: int
    k2: int
    m: int

    def __post_init__(self) -> None:
        n, k, k1, k2, m = self.n, self.k, self.k1, self.k2, self.m
        if n < 2:
            raise ValueError("n must be at least 2")
        if not 2 * n * n < 2 * k + 2:
            raise ValueError("need 2n^2 < 2k + 2")
        if not (k1 > n + 1 and k2 > n + 1):
            raise ValueError("need k1, k2 > n + 1")
        if 1 + k1 + n * k + k2 != 2 ** m:
            raise ValueError("need 1 + k1 + nk + k2 = 2^m")

    @classmethod
    def smallest(cls, n: int) -> "CounterexampleParams":
        if n < 2:
            raise ValueError("n must be at least 2")
        k, k1 = n * n, n + 2
        m = 0
        while 2 ** m <= n ** 3 + 2 * n + 4:
            m += 1
        return cls(n, k, k1, 2 ** m - 1 - k1 - n * k, m)

    @property
    def closed_form_length(self) -> int:
        return 4 - 4 * self.k + 6 * self.k * self.n + 2 ** (self.m + 1)

    @property
    def claimed_bound(self) -> int:
        """``2n^2 + 2(2^m + 1)``, the bound as stated for ``l(Delta^n)``."""
        return 2 * self.n ** 2 + 2 * (2 ** self.m + 1)

    @property
    def corrected_bound(self) -> int:
        """Same bound with ``4 + 6 + ... + 2n`` summed correctly."""
        return 2 * self.n ** 2 + 4 * self.n - 4 + 2 * (2 ** self.m + 1)


def rho() -> Diagram:
    """The (1, 2) diagram: one split cell."""
    return cell(MERGE, forward=False)


def checked_theta(th: Diagram | None = None) -> Diagram:
    """Validate a candidate theta: 4 cells over ``x`` with ``l(theta^m) = 2 + 2m``."""
    th = theta() if th is None else th
    if th.top != ("x",) or th.bottom != ("x",):
        raise DiagramError("theta must be an (x, x) diagram")
    if th.cells != 4 or not is_reduced(th):
        raise DiagramError(f"theta must be reduced with 4 cells, got {th.cells}")
    for m in (2, 3):
        if d_power(th, m).cells != 2 + 2 * m:
            raise DiagramError(f"theta^{m} does not have {2 + 2 * m} cells")
    return th


def delta_block(n: int, th: Diagram) -> Diagram:
    """``theta^-1 + ... + theta^-1`` (n-1 copies) ``+ theta^(n-1)``."""
    return d_sum_all([d_inverse(th)] * (n - 1) + [d_power(th, n - 1)])


def psi(m: int, shape: str = "offset") -> Diagram:
    """Top length 1, bottom length ``2^m + 2``, ``2^m + 1`` split cells.

    ``"offset"`` splits off a single leaf first and then uses a left comb;
    ``"left"`` is the plain left comb.
    """
    width = 2 ** m + 2
    if shape == "left":
        tree = left_comb(width)
    elif shape == "offset":
        tree = (LEAF, left_comb(width - 1))
    else:
        raise ValueError(f"unknown shape {shape!r}")
    return split_diagram(tree)


def chi(p: CounterexampleParams, th: Diagram) -> Diagram:
    block = delta_block(p.n, th)
    return d_sum_all([rho(), epsilon(p.k1)] + [block] * p.k + [epsilon(p.k2), d_inverse(rho())])


@dataclass(frozen=True)
class CounterexampleReport:
    params: CounterexampleParams
    length: int              # cells of the built Delta
    reduced_length: int      # cells after d_reduce
    closed_form: int
    chi_cells: int
    chi_power_cells: int     # reduced chi^n
    power_length: int        # l(Delta^n)
    claimed_bound: int
    corrected_bound: int
    psi_shape: str

    @property
    def built_reduced(self) -> bool:
        return self.length == self.reduced_length

    @property
    def counterexample(self) -> bool:
        return self.power_length < self.reduced_length


def boundary_cells(d: Diagram) -> tuple[frozenset, frozenset]:
    """Offsets of merge cells sitting on the top boundary and split cells on the bottom.

    A split tree placed above ``d`` can only cancel against the first set and
    its mirror below ``d`` only against the second, so these two sets decide
    which choices of Psi leave ``Psi o d o Psi^-1`` reduced.
    """
    g = _CellGraph(d)
    top = {e: i for i, e in enumerate(g.top)}
    bottom = {e: i for i, e in enumerate(g.bottom)}
    t, b = set(), set()
    for c in g.cells.values():
        if c.forward and all(e in top for e in c.top):
            t.add(top[c.top[0]])
        if not c.forward and all(e in bottom for e in c.bottom):
            b.add(bottom[c.bottom[0]])
    return frozenset(t), frozenset(b)


def psi_independent(n: int, th: Diagram | None = None) -> bool:
    """Whether ``l(Delta^n) = 2(2^m+1) + l(chi^n)`` for every Psi that keeps Delta reduced.

    True when the boundary cells of reduced ``chi^n`` are among those of ``chi``.
    """
    th = checked_theta(th)
    c = chi(CounterexampleParams.smallest(n), th)
    t1, b1 = boundary_cells(c)
    tn, bn = boundary_cells(d_power(c, n))
    return tn | bn <= t1 | b1


def make_counterexample(n: int, th: Diagram | None = None,
                        psi_shape: str = "offset") -> tuple[CounterexampleParams, Diagram, CounterexampleReport]:
    if n < 2:
        raise ValueError("n must be at least 2")
    th = checked_theta(th)
    p = CounterexampleParams.smallest(n)
    c = chi(p, th)
    ps = psi(p.m, psi_shape)
    delta = d_compose_all([ps, c, d_inverse(ps)])
    reduced = d_reduce(delta)
    chi_n = d_power(c, n)
    power = d_power(delta, n)
    report = CounterexampleReport(
        params=p,
        length=delta.cells,
        reduced_length=reduced.cells,
        closed_form=p.closed_form_length,
        chi_cells=c.cells,
        chi_power_cells=chi_n.cells,
        power_length=power.cells,
        claimed_bound=p.claimed_bound,
        corrected_bound=p.corrected_bound,
        psi_shape=psi_shape,
    )
    return p, delta, report


def counterexample_power(n: int, j: int, th: Diagram | None = None) -> Diagram:
    """Reduced ``Delta^j`` for the n-th counterexample."""
    _, delta, _ = make_counterexample(n, th)
    return d_power(delta, j)
