import pytest
from hypothesis import given, strategies as st

from slenderlab.heg import (HypothesisError, LetterAssignment, NestedSpec, alternating_decomposition,
                            build_nested, higman_chain_verify, nested_levels, project_high, project_low,
                            witness_exponents)
from slenderlab.lengths import free_length, free_um_witness
from slenderlab.words import FreeWord, free_reduce, letter, parse_tokens

from conftest import codes


def w(text):
    return FreeWord(parse_tokens(text))


def test_projection_examples():
    x = w("a0 a2 A1 a2")
    assert project_low(x, 1) == w("a0 A1")
    assert project_high(x, 1) == w("a2 a2")
    assert project_low(w("a0 a1"), 5) == w("a0 a1")
    assert project_low(w("a2 a2"), 1) == FreeWord()
    assert project_high(w("a0 a1"), 1) == FreeWord()


def test_alternating_examples():
    assert alternating_decomposition(w("a0 a2 a2 a1"), 1) == [w("a0"), w("a2 a2"), w("a1")]
    assert alternating_decomposition(w("a0 a1"), 1) == [w("a0 a1")]
    assert alternating_decomposition(w("a2"), 1) == [w("a2")]


@given(codes(rank=6), st.integers(0, 6))
def test_projections_idempotent_and_partition(c, n):
    x = free_reduce(c)
    lo, hi = project_low(x, n), project_low(project_low(x, n), n)
    assert lo == hi
    assert project_high(project_high(x, n), n) == project_high(x, n)
    blocks = alternating_decomposition(x, n)
    assert sum((b.letters for b in blocks), ()) == x.letters
    sides = [abs(b.letters[0]) - 1 > n for b in blocks]
    assert all(s != t for s, t in zip(sides, sides[1:]))
    assert all(all((abs(c) - 1 > n) == s for c in b.letters) for b, s in zip(blocks, sides))


@given(codes(rank=6, max_size=30), codes(rank=6, max_size=30), st.integers(0, 6))
def test_projection_is_homomorphism(u, v, n):
    U, V = FreeWord(u), FreeWord(v)
    assert project_low(U * V, n) == free_reduce(project_low(U, n).letters + project_low(V, n).letters)
    assert project_high(U * V, n) == free_reduce(project_high(U, n).letters + project_high(V, n).letters)


def test_build_nested_examples():
    spec = NestedSpec.parse("W=a1 k=2\nW=a2 k=2\n")
    levels = nested_levels(spec)
    assert levels[1] == w("a2") and levels[0] == w("a1 a2 a2") and levels[2] == FreeWord()
    assert build_nested(NestedSpec.parse("W=a1 k=7")) == w("a1")
    spec3 = NestedSpec(tuple((letter(p), 2) for p in (1, 2, 3)))
    assert build_nested(spec3) == w("a1 a2 a3 a3 a2 a3 a3")


def test_spec_validation_and_round_trip():
    with pytest.raises(ValueError):
        NestedSpec.parse("W=a0 k=1")       # W_1 may only use indices >= 1
    with pytest.raises(ValueError):
        NestedSpec.parse("W=a1 k=0")
    with pytest.raises(ValueError):
        NestedSpec.parse("garbage")
    spec = NestedSpec.parse("W=a1 A2 k=3\nW=a2 k=4\n")
    assert NestedSpec.parse(spec.dumps()) == spec


def _phi(images):
    return LetterAssignment(images, free_length(), free_um_witness())


def test_descent_example_two_levels():
    phi = _phi({1: w("a0"), 2: w("a1")})
    spec = NestedSpec.parse("W=a1 k=1\nW=a2 k=1\n")
    rep = higman_chain_verify(spec, phi, recompute=True)
    assert rep.exponents[0] == 3
    assert rep.lengths[-2:] == (1, 4)
    assert rep.passed and rep.exponents_match_witness


def test_trivial_image_rejected():
    phi = _phi({1: FreeWord(), 2: w("a1")})
    with pytest.raises(HypothesisError):
        higman_chain_verify(NestedSpec.parse("W=a1 k=1\nW=a2 k=1\n"), phi)


def test_depth8_ascending_chain():
    phi = _phi({i: FreeWord((1,) + (2,) * i) for i in range(9)})
    spec = NestedSpec(tuple((letter(p), 1) for p in range(1, 9)))
    rep = higman_chain_verify(spec, phi, recompute=True)
    assert rep.passed
    assert all(x < y for x, y in zip(rep.lengths, rep.lengths[1:]))
    assert list(rep.exponents) == [r + 2 for r in rep.word_lengths]
    assert witness_exponents(spec, phi) == list(rep.exponents)


@given(st.lists(st.tuples(codes(rank=2, max_size=4), st.integers(1, 3)), min_size=1, max_size=4))
def test_descent_property_random_specs(raw):
    # W_p = a_p followed by arbitrary higher letters; images random nontrivial words in F2
    entries = []
    for p, (extra, k) in enumerate(raw, start=1):
        tail = tuple(c + (p if c > 0 else -p) for c in extra)
        word = free_reduce((p + 1,) + tail)
        if not word or min(abs(c) - 1 for c in word.letters) < p:
            word = letter(p)
        entries.append((word, k))
    spec = NestedSpec(tuple(entries))
    top = max(abs(c) - 1 for wd, _ in entries for c in wd.letters)
    images = {i: FreeWord(((i % 2) + 1,) * (1 + i % 3)) for i in range(top + 1)}
    phi = _phi(images)
    try:
        rep = higman_chain_verify(spec, phi, recompute=True)
    except HypothesisError:
        return
    assert rep.passed
