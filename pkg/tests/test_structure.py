import threading

import pytest

from grouptop import structure as st
from grouptop.corpus import CORPUS_NAMES, corpus_group
from grouptop.groups import cyclic, direct_product, quotient
from grouptop.words import commutator_word, elementary_set

from conftest import perm


def labs(H):
    return set(H.labels())


def test_center_and_centralizer(S3, Q8):
    assert len(st.center(S3)) == 1
    assert labs(st.center(Q8)) == {"1", "-1"}
    assert labs(st.centralizer(Q8, Q8.from_payload("i"))) == {"1", "-1", "i", "-i"}


def test_normalizer(S3):
    H = st.generated(S3, [perm(S3, "(1 2)")])
    assert st.normalizer(S3, H) == H
    A3 = st.generated(S3, [perm(S3, "(1 2 3)")])
    assert len(st.normalizer(S3, A3)) == 6


@pytest.mark.parametrize("name", ["S3", "Q8", "D4", "A4", "Heis3"])
def test_centralizer_is_solution_set(name):
    G = corpus_group(name)
    inter = set(range(len(G)))
    for g in G.elements():
        cen = st.centralizer(G, g)
        assert cen.members == G.indices(elementary_set(G, commutator_word(g)))
        inter &= cen.members
    assert frozenset(inter) == st.center(G).members


def test_series(S3, Q8):
    assert [len(H) for H in st.upper_central_series(Q8)] == [2, 8]
    assert st.nilpotency_class(Q8) == 2
    assert [len(H) for H in st.upper_central_series(S3)] == [1]
    assert st.nilpotency_class(S3) is None
    assert [len(H) for H in st.derived_series(corpus_group("S4"))] == [24, 12, 4, 1]
    assert st.is_solvable(corpus_group("S4")) and st.nilpotency_class(cyclic(1)) == 0
    assert [len(H) for H in st.lower_central_series(corpus_group("D4"))] == [8, 2, 1]


def test_quotient_series_images(Q8):
    Q = quotient(Q8, Q8.center_idx())
    assert Q.is_abelian() and len(Q) == 4
    assert [len(H) for H in st.upper_central_series(Q)] == [4]
    assert [len(H) for H in st.derived_series(Q)] == [4, 1]
    # the derived subgroup of Q8 is the kernel, so its image is trivial
    assert st.derived_series(Q8)[1].members == Q8.center_idx()


def test_bilinearity(S3, Q8):
    assert st.check_commutator_bilinearity(corpus_group("Heis3"))
    assert st.check_commutator_bilinearity(Q8)
    assert st.centralizer_index_matches_image(Q8)
    with pytest.raises(st.PreconditionError):
        st.check_commutator_bilinearity(S3)


def test_engel_and_fitting(S3):
    A3 = {"()", "(1 2 3)", "(1 3 2)"}
    assert {S3.label(x.index) for x in st.engel_set(S3)} == A3
    assert labs(st.fitting_subgroup(S3)) == A3
    S4 = corpus_group("S4")
    V4 = st.fitting_subgroup(S4)
    assert len(V4) == 4 and V4.is_normal
    for name in ("Q8", "D4", "Heis3", "C2xC4"):
        G = corpus_group(name)
        assert len(st.engel_set(G)) == len(G)


@pytest.mark.parametrize("name", [n for n in CORPUS_NAMES if len(corpus_group(n)) <= 24])
def test_engel_equals_fitting_on_corpus(name):
    G = corpus_group(name)
    assert st.engel_set_idx(G) == st.fitting_subgroup(G).members


def test_subgroup_counts():
    assert len(st.enumerate_subgroups(corpus_group("S4"))) == 30
    assert len(st.enumerate_subgroups(corpus_group("Q8"))) == 6
    assert len(st.normal_subgroups(corpus_group("S4"))) == 4
    assert len(st.enumerate_subgroups(cyclic(12))) == 6


def test_caps_and_cancellation():
    big = direct_product(corpus_group("S4"), cyclic(3))
    with pytest.raises(st.CapExceeded):
        st.enumerate_subgroups(big)
    token = st.CancellationToken()
    token.cancel()
    with pytest.raises(st.Cancelled):
        st.enumerate_subgroups(corpus_group("S4"), cancel=token)
    # cancelling from another thread stops a running enumeration
    token = st.CancellationToken()
    threading.Timer(0.0, token.cancel).start()
    try:
        st.fitting_subgroup(corpus_group("C2xS4"), cap=48, cancel=token)
    except st.Cancelled:
        pass


def test_levi_vdw():
    assert st.levi_vdw_check(corpus_group("Heis3"))
    assert st.levi_vdw_check(cyclic(3))
    assert st.levi_vdw_check(corpus_group("C3xC3"))
    with pytest.raises(st.PreconditionError):
        st.levi_vdw_check(cyclic(4))


def test_not_a_subgroup(S3):
    from grouptop.groups import NotASubgroupError
    with pytest.raises(NotASubgroupError):
        st.SubgroupSet.of(S3, [perm(S3, "(1 2)"), perm(S3, "(1 3)")])


def test_structure_report_indices(S3):
    rep = st.structure_report(S3)
    assert rep["order"] == 6 and rep["center"] == [S3.identity_idx]
    assert rep["engel_set"] == rep["fitting_subgroup"]
    assert len(rep["labels"]) == 6
