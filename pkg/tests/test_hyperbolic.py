import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from slenderlab.hyperbolic import (Presentation, ResourceCapError, StrategyError, TorsionError, WordMetric,
                                   ball, bs_presentation, c16_check, dehn_reduce, delta_estimate,
                                   free_presentation, gromov_product, lambda_estimate, min_power_exponent,
                                   ngon_check, periodic_distortion_check, power_grows, surface_presentation)
from slenderlab.words import FreeWord, parse_tokens, power_word

F2 = free_presentation(2)
S2 = surface_presentation(2)
a, b, c, d = 1, 2, 3, 4
A, B, C, D = -1, -2, -3, -4


@pytest.fixture(scope="module")
def f2_ball5():
    return ball(F2, 5)


@pytest.fixture(scope="module")
def s2_ball3():
    return ball(S2, 3)


def test_c16():
    assert c16_check(F2).holds
    wit = c16_check(S2)
    assert wit.holds and wit.max_piece == 1 and wit.bound == Fraction(8, 6)
    bs = c16_check(bs_presentation(2))
    assert not bs.holds
    # longest piece is a single letter; 6 * 1 >= 5 already breaks the condition
    assert bs.max_piece == 1 and bs.min_relator == 5


def test_dehn_examples():
    assert dehn_reduce(S2, S2.relators[0]) == FreeWord()
    assert dehn_reduce(F2, FreeWord((a, b, B))) == FreeWord((a,))
    assert dehn_reduce(S2, FreeWord((a, b, A, B, c, d, C))) == FreeWord((d,))
    with pytest.raises(StrategyError):
        dehn_reduce(bs_presentation(2), FreeWord((a,)))
    with pytest.raises(StrategyError):
        WordMetric(bs_presentation(2))


def test_presentation_file_round_trip():
    assert Presentation.parse(S2.dumps()).relators == S2.relators
    with pytest.raises(ValueError):
        Presentation.parse("rel: a0 a1")
    with pytest.raises(ValueError):
        Presentation(2, (FreeWord((a, b, A)),))   # not cyclically reduced


def test_ball_sizes(f2_ball5):
    assert [len(ball(F2, r)) for r in (0, 1, 2)] == [1, 5, 17]
    assert len(f2_ball5) == 485 == 1 + 4 * (3 ** 5 - 1) // 2


def test_surface_growth_matches_growth_series():
    # spheres from (1+2x+2x^2+2x^3+x^4) / (1-6x-6x^2-6x^3+x^4)
    num = [1, 2, 2, 2, 1]
    den = [1, -6, -6, -6, 1]
    spheres = []
    for n in range(5):
        s = (num[n] if n < len(num) else 0) - sum(den[i] * spheres[n - i] for i in range(1, min(n, 4) + 1))
        spheres.append(s)
    sizes = [len(ball(S2, r)) for r in range(5)]
    assert [sizes[0]] + [y - x for x, y in zip(sizes, sizes[1:])] == spheres == [1, 8, 56, 392, 2736]


def test_ball_closed_under_inverse(s2_ball3):
    for g in s2_ball3.elements:
        assert tuple(-x for x in reversed(g)) in s2_ball3


def test_resource_cap(monkeypatch):
    monkeypatch.setenv("SLENDERLAB_MAX_BALL", "100")
    with pytest.raises(ResourceCapError):
        ball(S2, 3)


def test_gromov_examples(f2_ball5):
    bl = f2_ball5
    assert gromov_product(bl, (a,), (b,)) == 0
    assert gromov_product(bl, (a,), (a,)) == 1
    assert gromov_product(bl, (a, b), (a, b, b)) == 2
    with pytest.raises(ValueError):
        gromov_product(ball(F2, 1), (a, b), (a,))


def test_gromov_symmetry_and_bounds(s2_ball3):
    rng = random.Random(3)
    els = s2_ball3.elements
    for _ in range(300):
        x, y, p = (rng.choice(els) for _ in range(3))
        g = gromov_product(s2_ball3, x, y, p)
        assert g == gromov_product(s2_ball3, y, x, p)
        assert 0 <= g <= min(s2_ball3.distance(p, x), s2_ball3.distance(p, y))
        assert (2 * g).denominator == 1


def test_delta():
    rep = delta_estimate(ball(F2, 3))
    assert rep.delta == 0 and rep.exhaustive
    rep = delta_estimate(ball(S2, 2))
    assert rep.delta >= 0 and rep.exhaustive
    sampled = delta_estimate(ball(F2, 3), samples=500, seed=1)
    assert not sampled.exhaustive and sampled.delta == 0


def test_surface_delta_recorded(s2_ball3):
    rep = delta_estimate(s2_ball3)
    assert rep.exhaustive
    x, y, z = rep.witness[1:]
    p = rep.products
    assert p[0] == gromov_product(s2_ball3, x, y) and p[2] == gromov_product(s2_ball3, x, z)
    assert rep.delta == max(0, min(p[0], p[1]) - p[2])


def test_min_power_exponent(f2_ball5, s2_ball3):
    assert min_power_exponent(ball(F2, 4), 10) == 2
    assert min_power_exponent(f2_ball5, 10) == 2
    assert all(power_grows(f2_ball5, g, 2) for g in f2_ball5.elements if g)
    assert min_power_exponent(ball(F2, 0), 10) == 1
    N = min_power_exponent(s2_ball3, 10)
    assert N is not None and N <= 10


def test_distortion():
    rep = periodic_distortion_check(F2, FreeWord((a, b)), 3, Fraction(1, 1000))
    assert rep.min_ratio == 1 and rep.passed
    rep = periodic_distortion_check(S2, FreeWord((a, c)), 2, Fraction(1, 2))
    assert rep.min_ratio >= Fraction(1, 2) and rep.passed and rep.conjugator_radius == 2


def test_lambda():
    assert lambda_estimate(F2, FreeWord((a, b)), 5) == Fraction(1, 2)
    assert lambda_estimate(F2, FreeWord((a,)), 5) == 1
    with pytest.raises(TorsionError):
        lambda_estimate(Presentation(2, (FreeWord((a, a, a, a, a, a, a)),)), FreeWord((a,)), 8)


def test_ngon():
    deg = ngon_check(F2, [(), (a, b)], 1, 1)
    assert deg.line_to_side == 0 and deg.side_to_line == 0 and deg.passed
    pts = [power_word(FreeWord((a, b)), i) for i in range(4)]
    rep = ngon_check(F2, pts, 1, 1)
    assert rep.passed and rep.turn_products == (0, 0)
    bad = ngon_check(F2, [(), (a,), ()], 1, 5)
    assert not bad.hypothesis
    assert bad.line_to_side >= 0


@settings(max_examples=60)
@given(st.lists(st.sampled_from([a, A, b, B, c, C, d, D]), max_size=4),
       st.lists(st.sampled_from([a, A, b, B, c, C, d, D]), max_size=4))
def test_dehn_against_ball(u, v):
    u, v = tuple(u), tuple(v)
    metric = WordMetric(S2)
    inv_u = tuple(-x for x in reversed(u))
    red = dehn_reduce(S2, FreeWord(inv_u + v))
    assert len(red) <= len(u) + len(v)
    same = metric.find(u, 4) == metric.find(v, 4)
    assert (len(red) == 0) == same
