import pytest
from hypothesis import given, strategies as st

from slenderlab.words import (FreeWord, Generator, cyclic_reduce, format_word, free_reduce, letter,
                              parse_tokens, power_word)

from conftest import codes

a, b = 1, 2
A, B = -1, -2


def W(*c):
    return FreeWord(tuple(c))


def test_reduce_examples():
    assert free_reduce(W(a, b, B, a)) == W(a, a)
    assert free_reduce(W()) == W()
    assert free_reduce(W(a, b, A, a, B)) == W(a)


def test_power_examples():
    assert power_word(W(a, b), 2) == W(a, b, a, b)
    assert power_word(W(a, b, A), 3) == W(a, b, b, b, A)
    assert power_word(W(a), -2) == W(A, A)
    assert power_word(W(a, b), 0) == W()
    assert power_word(W(a, b, A), -1) == W(a, B, A)


def test_text_format():
    assert parse_tokens("a3 A0 a10") == (4, -1, 11)
    assert format_word((4, -1, 11)) == "a3 A0 a10"
    assert str(W(a, B)) == "a0 A1"
    with pytest.raises(ValueError):
        parse_tokens("b2")
    assert str(Generator.from_code(-3)) == "A2"
    assert letter(2, -1) == W(-3)


def test_zero_code_rejected():
    with pytest.raises(ValueError):
        FreeWord((1, 0))


@given(codes())
def test_reduce_idempotent_and_shorter(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert r.is_reduced()


@given(codes(), codes())
def test_reduce_is_a_homomorphism_image(u, v):
    assert free_reduce(free_reduce(u).letters + free_reduce(v).letters) == free_reduce(u + v)
    assert free_reduce(u + FreeWord(u).inverse().letters) == FreeWord()


@given(codes(max_size=12), st.integers(-6, 6))
def test_power_matches_naive(w, k):
    w = FreeWord(w)
    naive = (w if k >= 0 else w.inverse()).letters * abs(k)
    assert power_word(w, k) == free_reduce(naive)


@given(codes(max_size=20))
def test_cyclic_reduce(w):
    c = cyclic_reduce(free_reduce(w))
    assert c.is_reduced()
    if len(c) > 1:
        assert c.letters[0] != -c.letters[-1]


@given(codes())
def test_text_round_trip(w):
    assert parse_tokens(format_word(w)) == w
