import pytest

from grouptop import abelian as ab
from grouptop.classify import (AbelianD, FiniteD, FreeD, HeisenbergD, KnownGroup, ProductD,
                               QuotientD, UnknownGroupError, classify, decide_cen_cofinite,
                               decide_mon_cofinite, decide_WCL, decide_zar_cofinite,
                               oracle_check_finite)
from grouptop.corpus import CORPUS_NAMES, corpus_group
from grouptop.groups import cyclic, symmetric
from grouptop.heisenberg import HeisenbergSpec
from grouptop.report import NO, UNDECIDED, YES, collecting, v_and, v_or
from grouptop.verify import REFERENCE_VERDICTS, SYMBOLIC

PROPS = ("WCL", "mon_cofinite", "cen_cofinite", "zar_cofinite")
Z = AbelianD(ab.AbelianDescriptor((ab.free(),)))
TARSKI = KnownGroup("tarski_monster")


def verdicts(d):
    r = classify(d)
    return tuple(r.verdict(k) for k in PROPS)


def test_single_decisions():
    assert decide_WCL(FreeD(2)).verdict is YES
    assert decide_WCL(HeisenbergD(HeisenbergSpec.over_ring("Z"))).verdict is YES
    assert decide_WCL(FiniteD(symmetric(4))).verdict is YES
    assert decide_mon_cofinite(SYMBOLIC["Q/Z"]).verdict is YES
    assert decide_mon_cofinite(SYMBOLIC["Q/Z^(w)"]).verdict is NO
    assert decide_mon_cofinite(TARSKI).verdict is YES
    assert decide_cen_cofinite(HeisenbergD(HeisenbergSpec.over_ring("Z"))).verdict is NO
    assert decide_zar_cofinite(Z).verdict is YES
    assert decide_zar_cofinite(FreeD(2)).verdict is NO


def test_tarski_separates_classes():
    assert verdicts(TARSKI)[1:] == (YES, YES, NO)
    f = decide_zar_cofinite(TARSKI)
    assert "knowledge-base" in f.citation


def test_findings_carry_citations():
    for d in SYMBOLIC.values():
        r = classify(d)
        for k in PROPS:
            f = r.findings[k]
            assert f.rule and f.citation


@pytest.mark.parametrize("name,key,expect", REFERENCE_VERDICTS)
def test_reference_verdicts(name, key, expect):
    assert classify(SYMBOLIC[name]).verdict(key) is expect


@pytest.mark.parametrize("name", list(SYMBOLIC))
def test_inclusions_hold(name):
    r = classify(SYMBOLIC[name])
    assert r.violations() == []
    if r.verdict("is_finite") is not YES:
        crit = v_or(r.verdict("prime_exponent"), r.verdict("WCL"))
        assert r.verdict("mon_cofinite") is crit


def test_product_examples():
    S3xZ = ProductD((FiniteD(symmetric(3)), Z))
    assert decide_cen_cofinite(S3xZ).verdict is NO
    assert decide_cen_cofinite(ProductD((TARSKI, FiniteD(cyclic(2))))).verdict is YES
    assert decide_mon_cofinite(ProductD((FreeD(2), FreeD(3)))).verdict is YES
    c5 = SYMBOLIC["C5^(w)"]
    assert decide_mon_cofinite(ProductD((c5, c5))).verdict is YES
    assert decide_mon_cofinite(ProductD((c5, SYMBOLIC["C3^(w)"]))).verdict is NO


def test_product_mon_rule_on_all_pairs():
    names = list(SYMBOLIC)
    for a in names:
        for b in names:
            p, q = classify(SYMBOLIC[a]), classify(SYMBOLIC[b])
            r = classify(ProductD((SYMBOLIC[a], SYMBOLIC[b])))
            both_wcl = v_and(p.verdict("WCL"), q.verdict("WCL"))
            assert r.verdict("WCL") is both_wcl, (a, b)
            if both_wcl is YES:
                assert r.verdict("mon_cofinite") is YES
            assert r.violations() == []


def test_quotients():
    hz = SYMBOLIC["H(Z)"]
    assert classify(QuotientD(hz, 1)).verdict("cen_cofinite") is NO
    r = classify(QuotientD(hz, 2))
    assert r.verdict("WCL") is YES and r.verdict("cen_cofinite") is UNDECIDED
    assert classify(QuotientD(FiniteD(symmetric(3)), 3)).verdict("zar_cofinite") is YES


def test_descriptor_validation():
    with pytest.raises(UnknownGroupError):
        KnownGroup("hesse_group")
    with pytest.raises(ValueError):
        FreeD(0)
    with pytest.raises(ValueError):
        ProductD(())
    assert verdicts(FreeD(1)) == verdicts(Z)


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_oracle_on_corpus(name):
    G = corpus_group(name)
    if len(G) > 48:
        pytest.skip("above the oracle cap")
    r = oracle_check_finite(FiniteD(G))
    assert all(r.verdict(k) is YES for k in PROPS)
    assert r.verdict("centralizer_T1") is YES.of(len(G.center_idx()) == 1)


def test_oracle_on_products():
    d = ProductD((FiniteD(cyclic(2)), FiniteD(corpus_group("Q8"))))
    assert oracle_check_finite(d).verdict("oracle") is YES


def test_collecting_captures_reports():
    with collecting() as log:
        classify(FreeD(4))
        classify(SYMBOLIC["H(Q)"])
    assert len(log.reports) >= 2 and log.violations() == []
