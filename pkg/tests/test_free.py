import pytest
from hypothesis import given, settings, strategies as st

from grouptop.free import (FreeGroupError, FreeWord, commutes, cyclic_reduction,
                           f_centralizer_generator, f_inverse, f_multiply, f_nth_root,
                           format_free_word, identity, join_reduced, parse_free_word,
                           primitive_root, reduced_words, same_cyclic_subgroup)


def W(text):
    return parse_free_word(text, 3)


def test_multiply_examples():
    assert f_multiply(W("a b"), W("B c")) == W("a c")
    u = W("a b A c")
    assert f_multiply(u, f_inverse(u)) == identity(3)
    assert f_multiply(W("a b A"), W("a b")) == W("a b b")


def test_primitive_root_examples():
    assert primitive_root(W("a b a b")) == (W("a b"), 2)
    assert primitive_root(W("a b")) == (W("a b"), 1)
    assert primitive_root(W("a^6")) == (W("a"), 6)
    # conjugate of a power: the root is conjugated back
    assert primitive_root(W("c a b a b C")) == (W("c a b C"), 2)
    with pytest.raises(FreeGroupError):
        primitive_root(identity(3))


def test_nth_root_examples():
    assert f_nth_root(W("a^6"), 3).witnesses == (W("a a").letters,)
    assert f_nth_root(W("a b"), 2).is_empty
    assert f_nth_root(W("a b a b"), 2).witnesses == (W("a b").letters,)


def test_centralizer_generator_examples():
    assert f_centralizer_generator(W("a^3")) == W("a")
    assert f_centralizer_generator(W("a b a b")) == W("a b")
    assert f_centralizer_generator(W("a b A")) == W("a b A")


def test_cyclic_reduction():
    s, core = cyclic_reduction(W("a b c B A"))
    assert s == W("a b") and core == W("c")


def test_parse_and_format():
    assert format_free_word(W("a b^2 A c^-1")) == "a b b A C"
    assert format_free_word(identity(2)) == "e"
    with pytest.raises(FreeGroupError):
        parse_free_word("d", 3)
    with pytest.raises(FreeGroupError):
        parse_free_word("a1", 3)


def test_reduced_word_counts():
    counts = {}
    for w in reduced_words(2, 4):
        counts[len(w)] = counts.get(len(w), 0) + 1
    assert counts == {0: 1, 1: 4, 2: 12, 3: 36, 4: 108}


letters = st.lists(st.tuples(st.integers(0, 1), st.sampled_from([1, -1])), max_size=10)


@settings(max_examples=300, deadline=None)
@given(letters, letters)
def test_join_reduced_matches_full_reduction(u, v):
    a, b = FreeWord(2, tuple(u)), FreeWord(2, tuple(v))
    assert join_reduced(a.letters, b.letters) == FreeWord(2, a.letters + b.letters).letters


@settings(max_examples=300, deadline=None)
@given(letters.filter(bool), st.integers(1, 5))
def test_powers_have_unique_roots(u, n):
    w = FreeWord(2, tuple(u))
    if w.is_identity:
        return
    root = f_nth_root(w ** n, n)
    assert root.witnesses == (w.letters,)
    r, k = primitive_root(w ** n)
    assert r ** k == w ** n


@settings(max_examples=300, deadline=None)
@given(letters, letters)
def test_commuting_iff_same_cyclic_subgroup(u, v):
    a, b = FreeWord(2, tuple(u)), FreeWord(2, tuple(v))
    if a.is_identity or b.is_identity:
        assert commutes(a, b)
        return
    assert commutes(a, b) == same_cyclic_subgroup(a, b)


def test_rank_checks():
    with pytest.raises(FreeGroupError):
        FreeWord(0)
    with pytest.raises(FreeGroupError):
        f_multiply(identity(2), identity(3))
