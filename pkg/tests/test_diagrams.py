import random

import pytest
from hypothesis import given, settings, strategies as st

from slenderlab import diagrams as dg
from slenderlab.diagrams.thompson import LEAF, left_comb, right_comb

rho = dg.rho()
TH = dg.theta()


def rand_diagram(seed, cells=None, top=None):
    rng = random.Random(seed)
    return dg.random_diagram(rng, cells if cells is not None else rng.randint(0, 20), top or rng.randint(1, 3))


def test_sum_examples():
    s = dg.d_sum(rho, dg.epsilon("x"))
    assert s.cells == 1 and len(s.top) == 2
    assert dg.d_sum(dg.epsilon(2), dg.epsilon(3)) == dg.epsilon(5)
    s = dg.d_sum(TH, TH)
    assert dg.is_reduced(s) and s.cells == 8


def test_compose_and_inverse_examples():
    c = dg.d_compose(rho, dg.d_inverse(rho))
    assert c.cells == 2 and c.top == ("x",) and not dg.is_reduced(c)
    assert dg.d_reduce(c) == dg.epsilon("x")
    assert dg.d_compose(TH, dg.epsilon(TH.bottom)) == TH
    inv = dg.d_inverse(rho)
    assert inv.top == ("x", "x") and inv.bottom == ("x",)
    with pytest.raises(dg.DiagramError):
        dg.d_compose(rho, rho)


def test_theta_family():
    assert TH.cells == 4 and dg.is_reduced(TH)
    tt = dg.d_compose(TH, TH)
    assert tt.cells == 8 and dg.d_reduce(tt).cells == 6
    assert [dg.d_power(TH, m).cells for m in range(1, 11)] == [2 + 2 * m for m in range(1, 11)]
    assert dg.d_reduce(TH) == TH


def test_f_elements():
    assert dg.f_element("").cells == 0
    assert dg.f_element("x0 X0") == dg.epsilon("x")
    assert dg.f_element("x0").cells == 4
    assert dg.parse_f_word("x0 X1 x1^-2") == [(0, 1), (1, -1), (1, -2)]
    assert dg.f_treepair("x0") == dg.TreePair(left_comb(3), right_comb(3))


def test_treepairs():
    sq = dg.treepair_mul(dg.generator(0), dg.generator(0))
    assert sq.is_reduced() and sq.carets == 6 == dg.d_power(TH, 2).cells
    p = dg.f_treepair("x0 x1 X0")
    assert dg.treepair_mul(p, p.inverse()) == dg.IDENTITY
    with pytest.raises(ValueError):
        dg.TreePair(LEAF, left_comb(2))


def test_serialization(tmp_path):
    d = rand_diagram(1, 12, 2)
    assert dg.parse(dg.dumps(d)) == d
    dg.save(d, tmp_path / "d.txt")
    assert dg.load(tmp_path / "d.txt") == d
    assert dg.parse("top: x\npad=0 rule=m dir=−\n") == rho
    with pytest.raises(dg.DiagramError):
        dg.parse("pad=0 rule=m dir=+\n")
    with pytest.raises(dg.DiagramError):
        dg.parse("top: x\npad=0 rule=m dir=+\n")   # cannot merge a single letter


def test_counterexample_parameters():
    assert dg.CounterexampleParams.smallest(2) == dg.CounterexampleParams(2, 4, 4, 19, 5)
    assert dg.CounterexampleParams.smallest(3) == dg.CounterexampleParams(3, 9, 5, 31, 6)
    with pytest.raises(ValueError):
        dg.CounterexampleParams(2, 4, 4, 18, 5)
    with pytest.raises(ValueError):
        dg.CounterexampleParams(2, 3, 4, 23, 5)


def test_counterexample_blocks():
    p = dg.CounterexampleParams.smallest(2)
    assert dg.delta_block(2, TH).cells == 8
    assert dg.delta_block(3, TH).cells == 14
    ps = dg.psi(p.m)
    assert ps.cells == 2 ** p.m + 1 and len(ps.top) == 1 and len(ps.bottom) == 2 ** p.m + 2


@pytest.mark.parametrize("n, length, power", [(2, 100, 78), (3, 258, 156)])
def test_counterexample_lengths(n, length, power):
    p, delta, rep = dg.make_counterexample(n)
    assert delta.top == ("x",) and delta.bottom == ("x",)
    assert rep.length == rep.reduced_length == rep.closed_form == length
    assert rep.power_length == power == rep.corrected_bound
    assert rep.chi_power_cells == 2 * n * n + 4 * n - 4
    assert rep.counterexample


def test_left_comb_psi_is_not_reduced():
    _, _, rep = dg.make_counterexample(2, psi_shape="left")
    assert not rep.built_reduced and rep.reduced_length == 90


def test_power_length_does_not_depend_on_psi():
    assert dg.psi_independent(2) and dg.psi_independent(3)
    c = dg.chi(dg.CounterexampleParams.smallest(2), TH)
    top, bottom = dg.boundary_cells(c)
    assert top == {32} and bottom == {0}


def test_bad_theta_rejected():
    with pytest.raises(dg.DiagramError):
        dg.checked_theta(dg.f_element("x1"))
    with pytest.raises(dg.DiagramError):
        dg.checked_theta(dg.d_compose(rho, dg.epsilon(2)))


@settings(max_examples=150)
@given(st.integers(0, 10 ** 9))
def test_inverse_cancels(seed):
    d = rand_diagram(seed)
    assert dg.d_reduce(dg.d_compose(d, dg.d_inverse(d))) == dg.epsilon(d.top)
    assert dg.d_inverse(dg.d_inverse(d)) == d


@settings(max_examples=100)
@given(st.integers(0, 10 ** 9))
def test_reduction_confluent(seed):
    d = rand_diagram(seed, random.Random(seed).randint(0, 40))
    rng = random.Random(seed + 1)
    outs = {dg.dumps(dg.d_reduce(d, random.Random(rng.random()))) for _ in range(6)}
    assert len(outs) == 1
    r = dg.d_reduce(d)
    assert dg.is_reduced(r) and dg.d_reduce(r) == r and r.cells <= d.cells


@settings(max_examples=100)
@given(st.integers(0, 10 ** 9))
def test_group_laws(seed):
    rng = random.Random(seed)
    a, b, c = (dg.f_element(dg.random_f_word(rng, rng.randint(0, 4))) for _ in range(3))
    assert dg.d_mul(dg.d_mul(a, b), c) == dg.d_mul(a, dg.d_mul(b, c))
    assert dg.d_mul(a, dg.d_inverse(a)) == dg.epsilon("x")


@settings(max_examples=100)
@given(st.integers(0, 10 ** 9))
def test_sum_of_reduced_is_reduced(seed):
    a, b = dg.d_reduce(rand_diagram(seed)), dg.d_reduce(rand_diagram(seed + 7))
    s = dg.d_sum(a, b)
    assert dg.is_reduced(s) and s.cells == a.cells + b.cells


@settings(max_examples=100)
@given(st.integers(0, 10 ** 9))
def test_treepair_oracle(seed):
    rng = random.Random(seed)
    w = dg.random_f_word(rng, rng.randint(0, 6))
    v = dg.random_f_word(rng, rng.randint(0, 6))
    assert dg.d_reduce(dg.word_diagram(w)).cells == dg.f_treepair(w).carets
    assert dg.d_equal(dg.f_treepair(w).diagram(), dg.word_diagram(w))
    assert dg.treepair_mul(dg.f_treepair(w), dg.f_treepair(v)) == dg.f_treepair(w + v)
