import random
from fractions import Fraction

import pytest

from slenderlab.hyperbolic import ball, free_presentation
from slenderlab.lengths import UmWitness, check_axioms, free_length, free_um_witness, um_check
from slenderlab.words import FreeWord, free_reduce


def test_um_examples():
    l, w = free_length(), free_um_witness()
    rep = um_check(l, w, [FreeWord((1, 2))], 3)
    (e,) = rep.entries
    assert (e.length, e.exponent, e.power_length, e.passed) == (2, 4, 8, True)
    rep = um_check(l, w, [FreeWord((1, 2, -1))], 3)
    assert rep.entries[0].power_length == 6 and rep.passed


def test_identity_skipped_and_negative_r_rejected():
    l, w = free_length(), free_um_witness()
    rep = um_check(l, w, [FreeWord(), FreeWord((1,))], 1)
    assert rep.skipped_identity == 1 and len(rep.entries) == 1
    with pytest.raises(ValueError):
        um_check(l, w, [], -1)


def test_witness_rejects_nonpositive_exponent():
    with pytest.raises(ValueError):
        UmWitness(lambda r: 0)(1)


def test_witness_values():
    w = free_um_witness()
    assert [w(r) for r in range(4)] == [1, 2, 3, 4]
    assert w(Fraction(1, 2)) == 2


def test_free_witness_brute_force_radius4():
    l, w = free_length(), free_um_witness(radius=4)
    sample = [FreeWord(g) for g in ball(free_presentation(2), 4).elements]
    for r in range(1, 7):
        rep = um_check(l, w, sample, r)
        assert rep.passed and rep.skipped_identity == 1 and rep.radius == 4


def test_axioms_on_random_pairs():
    rng = random.Random(5)

    def rand():
        return free_reduce([rng.choice((1, -1, 2, -2)) for _ in range(rng.randint(0, 12))])

    v = check_axioms(free_length(), [(rand(), rand()) for _ in range(10_000)])
    assert v.ok
