"""Metric balls in Cayley graphs and the checks run on them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ..words import FreeWord, cyclic_reduce, free_reduce, power_word
from .metric import WordMetric
from .presentation import Presentation


def _letters(w) -> tuple[int, ...]:
    return w.letters if isinstance(w, FreeWord) else tuple(w)


def _inv(w: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-c for c in reversed(w))


@dataclass(frozen=True)
class CayleyBall:
    """``D(R)``: shortlex representatives in BFS order with their lengths."""

    metric: WordMetric = field(repr=False, compare=False)
    radius: int
    elements: tuple[tuple[int, ...], ...]
    lengths: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def presentation(self) -> Presentation:
        return self.metric.P

    def index(self, w) -> int | None:
        j = self.metric.find(_letters(w), self.radius)
        return j if j is not None and j < len(self.elements) else None

    def __contains__(self, w) -> bool:
        return self.index(w) is not None

    def representative(self, w) -> tuple[int, ...]:
        j = self.index(w)
        if j is None:
            raise KeyError(f"{w} is not in the ball of radius {self.radius}")
        return self.elements[j]

    def length(self, w) -> int:
        return self.metric.length(_letters(w))

    def distance(self, x, y) -> int:
        return self.metric.length(_inv(_letters(x)) + _letters(y))

    def distance_matrix(self) -> np.ndarray:
        n = len(self.elements)
        d = np.zeros((n, n), dtype=np.int64)
        for i, x in enumerate(self.elements):
            xi = _inv(x)
            for j in range(i + 1, n):
                d[i, j] = d[j, i] = self.metric.length(xi + self.elements[j])
        return d


def ball(P: Presentation | WordMetric, R: int, strategy: str | None = None) -> CayleyBall:
    metric = P if isinstance(P, WordMetric) else WordMetric(P, strategy)
    if R < 0:
        raise ValueError("radius must be nonnegative")
    metric.extend_to(R)
    stop = metric._level_start[R + 1]
    return CayleyBall(metric, R, tuple(metric.reps[:stop]), tuple(metric.lengths[:stop]))


# Gromov products ---------------------------------------------------------

def gromov_product(b: CayleyBall, x, y, p=()) -> Fraction:
    for name, v in (("x", x), ("y", y), ("p", p)):
        if v not in b:
            raise ValueError(f"{name} = {v} lies outside the ball of radius {b.radius}")
    return Fraction(b.distance(x, p) + b.distance(y, p) - b.distance(x, y), 2)


@dataclass(frozen=True)
class GromovReport:
    delta: Fraction
    witness: tuple                 # (p, x, y, z) attaining delta
    products: tuple[Fraction, Fraction, Fraction]   # (x,y)_p, (y,z)_p, (x,z)_p
    exhaustive: bool
    triples: int


def delta_estimate(b: CayleyBall, samples: int | None = None, seed: int = 0,
                   exhaustive_limit: int = 4000) -> GromovReport:
    """Four-point delta with basepoint 1.

    Scans every triple when the ball has at most ``exhaustive_limit``
    elements and ``samples`` is None, otherwise ``samples`` seeded triples.
    """
    n = len(b.elements)
    lengths = np.array(b.lengths, dtype=np.int64)
    dist = b.distance_matrix()
    # doubled products stay integral
    prod2 = lengths[:, None] + lengths[None, :] - dist
    best, where = 0, (0, 0, 0)
    if samples is None and n <= exhaustive_limit:
        for y in range(n):
            gap = np.minimum(prod2[:, y][:, None], prod2[y, :][None, :]) - prod2
            flat = int(np.argmax(gap))
            if gap.flat[flat] > best:
                best = int(gap.flat[flat])
                where = (flat // n, y, flat % n)
        exhaustive, count = True, n ** 3
    else:
        rng = random.Random(seed)
        count = samples if samples is not None else 100_000
        for _ in range(count):
            x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            gap = min(prod2[x, y], prod2[y, z]) - prod2[x, z]
            if gap > best:
                best, where = int(gap), (x, y, z)
        exhaustive = False
    x, y, z = where
    e = b.elements
    return GromovReport(
        delta=Fraction(best, 2),
        witness=((), e[x], e[y], e[z]),
        products=(Fraction(int(prod2[x, y]), 2), Fraction(int(prod2[y, z]), 2), Fraction(int(prod2[x, z]), 2)),
        exhaustive=exhaustive,
        triples=count,
    )


# powers ------------------------------------------------------------------

def power_grows(b: CayleyBall, g, N: int) -> bool:
    """``l(g^N) > l(g)``."""
    g = _letters(g)
    lg = b.length(g)
    return not b.metric.at_most(power_word(FreeWord(g), N).letters, lg)


def min_power_exponent(b: CayleyBall, nmax: int) -> int | None:
    nontrivial = [g for g in b.elements if g]
    for N in range(1, nmax + 1):
        if all(power_grows(b, g, N) for g in nontrivial):
            return N
    return None


class TorsionError(ValueError):
    pass


def lambda_estimate(P: Presentation | WordMetric, g, nmax: int) -> Fraction:
    """``max |i| / l(g^i)`` over ``1 <= |i| <= nmax``; a lower bound for any valid lambda."""
    metric = P if isinstance(P, WordMetric) else WordMetric(P)
    g = FreeWord(_letters(g))
    if metric.is_trivial(g):
        raise TorsionError("g is the identity")
    best = Fraction(0)
    for i in range(1, nmax + 1):
        for e in (i, -i):
            li = metric.length(power_word(g, e).letters)
            if li == 0:
                raise TorsionError(f"g^{e} = 1: g has finite order")
            best = max(best, Fraction(i, li))
    return best


# periodic words ----------------------------------------------------------

@dataclass(frozen=True)
class DistortionReport:
    min_ratio: Fraction
    worst: tuple[int, ...]
    theta: Fraction
    subwords: int
    proxy: str
    conjugator_radius: int
    cyclically_minimal: bool

    @property
    def passed(self) -> bool:
        return self.min_ratio >= 1 - self.theta


def periodic_distortion_check(P: Presentation | WordMetric, W, s: int, theta,
                              conjugator_radius: int = 2) -> DistortionReport:
    metric = P if isinstance(P, WordMetric) else WordMetric(P)
    W = FreeWord(_letters(W))
    if s < 1:
        raise ValueError("s must be at least 1")
    if not W or cyclic_reduce(W) != W:
        raise ValueError("W must be nonempty and cyclically reduced")
    theta = Fraction(theta)
    lw = metric.length(W.letters)
    minimal = True
    if conjugator_radius > 0:
        b = ball(metric, conjugator_radius)
        for v in b.elements:
            if metric.length(_inv(v) + W.letters + v) < lw:
                minimal = False
                break
    best, worst, count = None, (), 0
    for base in (W.letters * s, W.inverse().letters * s):
        n = len(base)
        for i in range(n):
            for j in range(i + 1, n + 1):
                V = base[i:j]
                count += 1
                ratio = Fraction(metric.length(V), len(V))
                if best is None or ratio < best:
                    best, worst = ratio, V
    return DistortionReport(best, worst, theta, count,
                            "cyclic reduction + conjugator search", conjugator_radius, minimal)


# polygons ----------------------------------------------------------------

@dataclass(frozen=True)
class NgonReport:
    side_lengths: tuple[int, ...]
    turn_products: tuple[Fraction, ...]
    geometric_hypothesis: bool     # sides > K1 and turn products < K
    constant_margins: tuple[Fraction, Fraction]   # K - 14 delta, K1 - 12 (K + delta)
    line_to_side: int              # max distance from polygonal line to [x_1, x_n]
    side_to_line: int              # max distance from [x_1, x_n] to polygonal line
    K: Fraction
    delta: Fraction

    @property
    def constants_ok(self) -> bool:
        return self.constant_margins[0] >= 0 and self.constant_margins[1] > 0

    @property
    def hypothesis(self) -> bool:
        return self.geometric_hypothesis and self.constants_ok

    @property
    def passed(self) -> bool:
        return self.line_to_side <= 2 * self.K and self.side_to_line <= 14 * self.delta


def _geodesic_vertices(metric: WordMetric, x: tuple[int, ...], y: tuple[int, ...]) -> list[tuple[int, ...]]:
    path = metric.geodesic(_inv(x) + y)
    out, cur = [x], x
    for c in path:
        cur = free_reduce(cur + (c,)).letters
        out.append(cur)
    return out


def ngon_check(P: Presentation | WordMetric, points: Sequence, K, K1, delta=0) -> NgonReport:
    metric = P if isinstance(P, WordMetric) else WordMetric(P)
    pts = [free_reduce(_letters(x)).letters for x in points]
    if len(pts) < 2:
        raise ValueError("need at least two points")
    K, K1, delta = Fraction(K), Fraction(K1), Fraction(delta)

    def d(u, v):
        return metric.length(_inv(u) + v)

    sides = tuple(d(pts[i - 1], pts[i]) for i in range(1, len(pts)))
    turns = tuple(
        Fraction(d(pts[i - 2], pts[i - 1]) + d(pts[i], pts[i - 1]) - d(pts[i - 2], pts[i]), 2)
        for i in range(2, len(pts)))
    geo = all(s > K1 for s in sides) and all(t < K for t in turns)

    line = []
    for i in range(1, len(pts)):
        line += _geodesic_vertices(metric, pts[i - 1], pts[i])
    side = _geodesic_vertices(metric, pts[0], pts[-1])

    def gap(from_pts, to_pts):
        return max(min(d(u, v) for v in to_pts) for u in from_pts)

    return NgonReport(
        side_lengths=sides,
        turn_products=turns,
        geometric_hypothesis=geo,
        constant_margins=(K - 14 * delta, K1 - 12 * (K + delta)),
        line_to_side=gap(line, side),
        side_to_line=gap(side, line),
        K=K,
        delta=delta,
    )
