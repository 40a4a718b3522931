import pytest
from hypothesis import given, settings, strategies as st

from grouptop.corpus import CORPUS_NAMES, corpus, corpus_group
from grouptop.groups import ElementMismatchError
from grouptop.words import (Word, WordSyntaxError, commutator_word, conjugation_word,
                            elementary_set, embed, evaluate, fiber, format_word, monomial,
                            normalize, parse_word)
from conftest import perm


def test_cancellation_to_constant(S3):
    g, h = perm(S3, "(1 2)"), perm(S3, "(1 2 3)")
    w = normalize([g, 1, -1, h], S3)
    assert w.is_constant and w == Word.constant(g * h)


def test_identity_coefficient_merges(S3):
    w = normalize([1, S3.e, 1], S3)
    assert w == Word.variable(S3, 2)
    assert format_word(w) == "x^2"


def test_no_cancellation(S3):
    g, h = perm(S3, "(1 2)"), perm(S3, "(1 2 3)")
    w = normalize([g, 1, h, -1], S3)
    assert w.coefficients == [g, h, S3.e] and w.exponents == [1, -1]


def test_evaluate(S3):
    g = perm(S3, "(1 2 3)")
    for a in S3.elements():
        assert evaluate(monomial(g), a) == g * a
    c = commutator_word(g)
    for a in S3.elements():
        if a * g == g * a:
            assert evaluate(c, a) == S3.e
    x = perm(S3, "(1 2)")
    # g x g^-1 x^-1, multiplied left to right
    assert c(x) == g * x * ~g * ~x == perm(S3, "(1 3 2)")


def test_raw_evaluation_matches_normal_form(S3):
    g, h = perm(S3, "(1 2)"), perm(S3, "(2 3)")
    raw = [g, 2, -1, h, 3, S3.e, -3]
    w = normalize(raw, S3)
    for a in S3.elements():
        assert evaluate(raw, a) == evaluate(w, a)


def test_elementary_sets(S3):
    for G in corpus(24):
        for g in G.elements():
            assert elementary_set(G, monomial(g)) == {~g}
        assert elementary_set(G, Word.variable(G)) == {G.e}
    g = perm(S3, "(1 2 3)")
    E = elementary_set(S3, commutator_word(g))
    assert E == {S3.e, g, g * g}


def test_fibers(Q8):
    for g in Q8.elements():
        for t in Q8.elements():
            assert fiber(Q8, monomial(g), t) == {~g * t}
    sq = Word.variable(Q8, 2)
    assert {a.payload for a in fiber(Q8, sq, Q8.from_payload("-1"))} == {"i", "-i", "j", "-j", "k", "-k"}
    w = normalize([Q8.from_payload("i"), 1, Q8.from_payload("j"), -2], Q8)
    for a in Q8.elements():
        assert a in fiber(Q8, w, w(a))


def test_word_product_and_inverse(S3):
    g = perm(S3, "(1 2)")
    w = normalize([g, 2, perm(S3, "(1 3)"), -1], S3)
    ident = w * w.inverse()
    assert ident.is_constant and ident.coefficients == [S3.e]
    assert w.degree == 3


def test_letters_view(S3):
    g = perm(S3, "(1 2)")
    w = normalize([g, 3], S3)
    assert [n for _, n in w.letters()] == [1, 1, 1]


def test_parse_and_format(S3):
    w = parse_word("g3 x g5 x^-1", S3)
    assert format_word(w) == "g3 x g5 x^-1"
    assert parse_word(format_word(w), S3) == w
    assert format_word(parse_word("x e x", S3)) == "x^2"
    assert format_word(parse_word("g1 g1", S3)) == "e"
    with pytest.raises(WordSyntaxError):
        parse_word("g99 x", S3)
    with pytest.raises(WordSyntaxError):
        parse_word("y", S3)


def test_embed_into_parent(S3):
    G = corpus_group("S4")
    sub = [a.index for a in G.elements() if a.payload[3] == 3]
    H, emb = G.subgroup_group(sub)
    w = normalize([H.element(1), 1, H.element(2), -1], H)
    pushed = embed(w, G, emb)
    for i, j in enumerate(emb):
        assert emb[w(H.element(i)).index] == pushed(G.element(j)).index
    with pytest.raises(ElementMismatchError):
        embed(w, G, [0] * len(H))


def test_conjugation_word(S3):
    g = perm(S3, "(1 2)")
    w = conjugation_word(g)
    for a in S3.elements():
        assert w(a) == ~a * g * a


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(CORPUS_NAMES[:20]), st.data())
def test_normal_form_preserves_values(name, data):
    G = corpus_group(name)
    term = st.one_of(st.integers(-3, 3), st.integers(0, len(G) - 1).map(G.element))
    raw = data.draw(st.lists(term, max_size=8))
    w = normalize(raw, G)
    parts = w.parts
    assert len(parts) % 2 == 1
    assert all(n != 0 for n in parts[1::2])
    assert all(c != G.identity_idx for c in parts[2:-1:2])
    assert normalize(w.terms(), G) == w
    for a in G.elements():
        assert evaluate(raw, a) == w(a)
