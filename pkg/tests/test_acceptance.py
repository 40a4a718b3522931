"""Acceptance criteria, one test each; a PASS/FAIL line per criterion is
printed in the terminal summary."""

import functools
import itertools
import time

import numpy as np

from grouptop import abelian as ab
from grouptop import free as fr
from grouptop.classify import FiniteD, ProductD, classify, oracle_check_finite
from grouptop.corpus import CORPUS_NAMES, corpus_group
from grouptop.heisenberg import HeisenbergSpec, binomial2, h_power, h_power_iterated
from grouptop.report import NO, YES, collecting, v_and, v_or
from grouptop.structure import center, centralizer, derived_series, engel_set_idx, fitting_subgroup, levi_vdw_check
from grouptop.topology import closure, is_quasitopological, topology
from grouptop.verify import (REFERENCE_VERDICTS, ENGEL_GROUPS, SYMBOLIC, check_finite_products,
                             invariant_factor_lists, power_with_coefficient, sum_coefficient, run)
from grouptop.words import commutator_word, elementary_set


def criterion(number: int, title: str, budget: float | None = None):
    def wrap(fn):
        @functools.wraps(fn)
        def test(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if budget is not None:
                    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
            except BaseException as exc:
                _emit(f"FAIL criterion {number}: {title} ({exc})")
                raise
            _emit(f"PASS criterion {number}: {title} ({detail}; {elapsed:.2f}s)")
        return test
    return wrap


# printed by the terminal summary hook in conftest.py
LINES: list[str] = []


def _emit(line: str) -> None:
    LINES.append(line)


def corpus(max_order=64):
    return [corpus_group(n) for n in CORPUS_NAMES if len(corpus_group(n)) <= max_order]


@criterion(1, "commutator fibers equal centralizers", budget=5.0)
def test_criterion_1():
    pairs = 0
    for G in corpus():
        for g in G.elements():
            assert G.indices(elementary_set(G, commutator_word(g))) == centralizer(G, g).members
            pairs += 1
    return f"{pairs} pairs"


@criterion(2, "centralizer topology: closure of e, quasi-topological, T1 iff center-free")
def test_criterion_2():
    t1 = {}
    for G in corpus():
        C = topology(G, "centralizer")
        assert closure({G.identity_idx}, C) == sum(1 << i for i in center(G).members), G.name
        assert is_quasitopological(C, G), G.name
        assert C.is_T1() == (len(center(G)) == 1), G.name
        t1[G.name] = C.is_T1()
    assert t1["S3"] and t1["S4"]
    assert not (t1["Q8"] or t1["D4"] or t1["Heis3"])
    return f"{len(t1)} groups, {sum(t1.values())} T1"


@criterion(3, "finite discreteness and oracle agreement")
def test_criterion_3():
    groups = corpus()
    for G in groups:
        full = (1 << len(G)) - 1
        for name in ("zariski_full", "monomial"):
            fam = topology(G, name)
            # every singleton closed means every subset is closed
            assert all(fam.closure(1 << i) == 1 << i for i in range(len(G))), (G.name, name)
            assert fam.closure(full) == full
        assert topology(G, "c_prime").is_T1()
        oracle_check_finite(FiniteD(G))
    return f"{len(groups)} groups, 0 mismatches"


@criterion(4, "Heisenberg closed-form powers", budget=10.0)
def test_criterion_4():
    Z = HeisenbergSpec.over_ring("Z")
    F3 = HeisenbergSpec.over_ring(3)
    box = range(-5, 6)
    checked = 0
    for u in itertools.product(box, repeat=3):
        for n in range(1, 13):
            assert h_power(Z, u, n) == h_power_iterated(Z, u, n)
            checked += 1
    for u in F3.elements():
        for n in range(0, 10):
            assert h_power(F3, u, n) == h_power_iterated(F3, u, n)
            checked += 1
    assert all(binomial2(n) == n * (n - 1) // 2 for n in range(13))
    # the sum 0 + 1 + ... + n as coefficient disagrees with repeated multiplication at n = 2
    u = (1, 1, 0)
    assert power_with_coefficient(Z, u, 2, sum_coefficient) != h_power_iterated(Z, u, 2)
    return f"{checked} powers; sum coefficient rejected at n=2"


def _orders(d: int) -> np.ndarray:
    x = np.arange(d)
    return d // np.gcd(x, d)


@criterion(5, "abelian socle sizes and linear solutions")
def test_criterion_5():
    ns = np.arange(1, 25)
    groups = 0
    for inv in invariant_factor_lists(10_000):
        orders = np.ones(1, dtype=np.int64)
        for d in inv:
            orders = np.lcm.outer(orders, _orders(d)).ravel()
        counts = np.bincount(orders)
        present = np.nonzero(counts)[0]
        brute = [int(counts[present[n % present == 0]].sum()) for n in ns]
        D = ab.AbelianDescriptor([ab.cyclic(d) for d in inv])
        got = [ab.socle_cardinality(D, int(n)).value for n in ns]
        assert got == brute, inv
        groups += 1
    equations = 0
    for inv in invariant_factor_lists(36):
        G = ab.FinitelyGeneratedAbelian(sorted(inv))
        elems = list(G.elements())
        for n in range(9):
            image = {}
            for x in elems:
                image.setdefault(G.normalize([n * v for v in x]), []).append(x)
            for a in elems:
                sol = ab.solve_linear(G, n, a)
                assert sorted(sol.witnesses) == sorted(image.get(G.normalize(a), []))
                equations += 1
    return f"{groups} groups of order <= 10^4, n <= 24; {equations} equations"


@criterion(6, "monomial cofiniteness matches prime exponent or WCL")
def test_criterion_6():
    assert len(SYMBOLIC) >= 20
    for name, d in SYMBOLIC.items():
        r = classify(d)
        if r.verdict("is_finite") is YES:
            assert r.verdict("mon_cofinite") is YES
        else:
            assert r.verdict("mon_cofinite") is v_or(r.verdict("prime_exponent"), r.verdict("WCL")), name
    for name, key, expect in REFERENCE_VERDICTS:
        assert classify(SYMBOLIC[name]).verdict(key) is expect, (name, key)
    return f"{len(SYMBOLIC)} descriptors, {len(REFERENCE_VERDICTS)} reference verdicts"


@criterion(7, "product rules")
def test_criterion_7():
    pairs = 0
    for (n1, d1), (n2, d2) in itertools.product(SYMBOLIC.items(), repeat=2):
        r1, r2, r = classify(d1), classify(d2), classify(ProductD((d1, d2)))
        wcl = v_and(r1.verdict("WCL"), r2.verdict("WCL"))
        assert r.verdict("WCL") is wcl, (n1, n2)
        mon = r.verdict("mon_cofinite")
        if wcl is YES:
            assert mon is YES, (n1, n2)
        both_prime = v_and(r1.verdict("prime_exponent"), r2.verdict("prime_exponent"))
        if wcl is NO and both_prime is NO:
            assert mon is NO, (n1, n2)
        if mon is YES and wcl is not YES:
            assert both_prime is not NO, (n1, n2)
        pairs += 1
    S3xZ = ProductD((SYMBOLIC["S3"], SYMBOLIC["Z"]))
    assert classify(S3xZ).verdict("cen_cofinite") is NO
    TxC2 = ProductD((SYMBOLIC["tarski"], FiniteD(corpus_group("C2"))))
    assert classify(TxC2).verdict("cen_cofinite") is YES
    finite = check_finite_products(48)
    return f"{pairs} symbolic pairs; {finite}"


@criterion(8, "free-group roots and commuting pairs", budget=30.0)
def test_criterion_8():
    words = [w for w in fr.reduced_words(2, 8) if not w.is_identity]
    roots = 0
    for n in (2, 3, 4):
        # invert the power map over every word; |u^n| >= |u|, so no root is missed
        brute: dict = {}
        for u in words:
            p = u ** n
            if len(p) <= 8:
                brute.setdefault(p.letters, []).append(u.letters)
        for w in words:
            found = fr.f_nth_root(w, n).witnesses
            expect = tuple(sorted(brute.get(w.letters, [])))
            assert tuple(sorted(found)) == expect, (w, n)
            assert len(expect) <= 1
            roots += 1
    short = [w for w in words if len(w) <= 6]
    commuting = 0
    for u, v in itertools.combinations(short, 2):
        if fr.commutes(u, v):
            ru, rv = fr.primitive_root(u)[0], fr.primitive_root(v)[0]
            assert ru in (rv, fr.f_inverse(rv)), (u, v)
            commuting += 1
    return f"{roots} root equations, {commuting} commuting pairs"


@criterion(9, "Engel set equals Fitting subgroup; exponent 3 identity; derived series of S4")
def test_criterion_9():
    for name in ("S3", "S4", "A4", "D4", "Q8", "Heis3") + tuple(f"C{n}" for n in range(2, 13)):
        G = corpus_group(name)
        assert engel_set_idx(G) == fitting_subgroup(G).members, name
    assert levi_vdw_check(corpus_group("Heis3"))
    S4 = corpus_group("S4")
    series = derived_series(S4)
    assert [len(H) for H in series] == [24, 12, 4, 1]
    even = set(corpus_group("A4").payloads)
    assert {S4.payloads[i] for i in series[1].members} == even
    return f"{len(ENGEL_GROUPS)} groups"


@criterion(10, "no inclusion violations in any emitted report")
def test_criterion_10():
    with collecting() as log:
        result = run("all")
        for d in SYMBOLIC.values():
            classify(d)
    assert result.passed, [c.name for c in result.cases if not c.passed]
    assert result.violations == [] and log.violations() == []
    return f"{len(log.reports)} reports, {len(result.cases)} suite cases, 0 violations"
