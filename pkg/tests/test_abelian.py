import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from grouptop import abelian as ab
from grouptop.abelian import (AbelianDescriptor, FinitelyGeneratedAbelian, SolutionSet,
                              classify_abelian, invariant_factors, smith_normal_form, solve_linear,
                              socle_cardinality)
from grouptop.cardinal import INFINITE, finite
from grouptop.report import NO, YES


def D(*blocks):
    return AbelianDescriptor(blocks)


def test_socle_examples():
    assert socle_cardinality(D(ab.qmodz()), 12) == finite(12)
    assert socle_cardinality(D(ab.qmodz(INFINITE)), 2) == INFINITE
    assert socle_cardinality(D(ab.cyclic(6, 2)), 2) == finite(4)
    assert socle_cardinality(D(ab.prufer(2)), 12) == finite(4)
    assert socle_cardinality(D(ab.prufer(3)), 4) == finite(1)
    assert socle_cardinality(D(ab.free(INFINITE), ab.rational()), 5) == finite(1)
    assert socle_cardinality(D(ab.cyclic(5, INFINITE)), 7) == finite(1)
    with pytest.raises(ValueError):
        socle_cardinality(D(ab.free()), 0)


def test_exponent_examples():
    assert ab.exponent(D(ab.cyclic(5, INFINITE))) == finite(5)
    assert ab.exponent(D(ab.free())) == INFINITE
    assert ab.exponent(D(ab.cyclic(4), ab.cyclic(6))) == finite(12)
    assert ab.exponent(D()) == finite(1)


def test_atf_and_prime_exponent():
    assert ab.is_almost_torsion_free(D(ab.qmodz()))
    assert ab.is_almost_torsion_free(D(ab.prufer(2), ab.prufer(3), ab.prufer(5)))
    assert not ab.is_almost_torsion_free(D(ab.cyclic(7, INFINITE)))
    assert ab.is_prime_exponent(D(ab.cyclic(7, INFINITE)))
    assert not ab.is_prime_exponent(D(ab.cyclic(6, INFINITE)))
    assert not ab.is_almost_torsion_free(D(ab.free(), ab.prufer(2, INFINITE)))


def test_classify_abelian_examples():
    z = classify_abelian(D(ab.free()))
    assert z.verdict("zar_cofinite") is YES and z.verdict("mon_cofinite") is YES
    assert classify_abelian(D(ab.qmodz(INFINITE))).verdict("zar_cofinite") is NO
    c6 = classify_abelian(D(ab.cyclic(6, INFINITE)))
    assert c6.verdict("zar_cofinite") is NO and c6.verdict("ATF") is NO and c6.verdict("prime_exponent") is NO
    c5 = classify_abelian(D(ab.cyclic(5, INFINITE)))
    assert c5.verdict("zar_cofinite") is YES and c5.verdict("WCL") is NO
    for r in (z, c6, c5):
        assert r.verdict("cen_cofinite") is YES
        assert r.violations() == []


def test_descriptor_json_round_trip():
    d = D(ab.cyclic(6), ab.prufer(2, INFINITE), ab.qmodz(), ab.free(3), ab.rational())
    raw = d.to_json()
    assert raw["blocks"][1] == {"kind": "prufer", "p": 2, "mult": "inf"}
    assert AbelianDescriptor.from_json(raw) == d


def test_bad_blocks():
    with pytest.raises(ValueError):
        ab.cyclic(1)
    with pytest.raises(ValueError):
        ab.prufer(4)


def _enumerated(invariants, n):
    return sum(1 for x in itertools.product(*(range(d) for d in invariants))
               if all(n * v % d == 0 for v, d in zip(x, invariants)))


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(2, 12), min_size=0, max_size=3), st.integers(1, 24))
def test_socle_matches_enumeration(invariants, n):
    d = D(*(ab.cyclic(m) for m in invariants))
    assert socle_cardinality(d, n).value == _enumerated(invariants, n)


def test_solve_linear_examples():
    Z6 = FinitelyGeneratedAbelian([6])
    sol = solve_linear(Z6, 2, [4])
    assert sol.witnesses == ((2,), (5,)) and len(sol) == 2
    assert solve_linear(Z6, 2, [3]).is_empty
    G = FinitelyGeneratedAbelian([4, 6], 1)
    assert solve_linear(G, 1, [1, 5, -7]).witnesses == ((1, 5, -7),)
    coset = solve_linear(FinitelyGeneratedAbelian([4], 2), 0, [0, 0, 0])
    assert coset.status == "coset" and coset.count == INFINITE
    assert solve_linear(FinitelyGeneratedAbelian([], 1), 3, [7]).is_empty


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(2, 9), min_size=1, max_size=3), st.integers(-10, 10), st.data())
def test_solve_linear_brute_force(invariants, n, data):
    G = FinitelyGeneratedAbelian(invariants)
    a = [data.draw(st.integers(0, d - 1)) for d in G.invariants]
    brute = sorted(x for x in G.elements() if G.normalize([n * v for v in x]) == tuple(a))
    assert list(solve_linear(G, n, a).witnesses) == brute


def test_smith_examples():
    S = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    assert [S[i][i] for i in range(3)] == [2, 6, 12]
    assert smith_normal_form([[0, 0], [0, 0]]) == [[0, 0], [0, 0]]
    G = invariant_factors([[2, 0], [0, 3]], 2)
    assert G.order() == finite(6)
    assert invariant_factors([[4, 6]], 2).invariants == (2,) and invariant_factors([[4, 6]], 2).rank == 1


def _diag(S):
    return [abs(S[i][i]) for i in range(min(len(S), len(S[0])))]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_smith_against_sympy(rows, cols, data):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf
    M = [[data.draw(st.integers(-20, 20)) for _ in range(cols)] for _ in range(rows)]
    ours = smith_normal_form(M)
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert ours[i][j] == 0
    d = _diag(ours)
    nz = [x for x in d if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    theirs = sympy_snf(Matrix(M), domain=ZZ)
    assert sorted(d) == sorted(abs(theirs[i, i]) for i in range(min(rows, cols)))


def test_solution_set_json():
    assert SolutionSet.empty().to_json() == {"status": "empty", "count": 0}
    assert SolutionSet.of([(1,), (0,)]).to_json() == {"status": "finite", "count": 2, "witnesses": [[0], [1]]}
    assert SolutionSet.coset((0, 1), INFINITE).to_json()["count"] == "inf"


def test_finite_order():
    assert FinitelyGeneratedAbelian([2, 3]).order() == finite(6)
    assert FinitelyGeneratedAbelian([2], 1).order() == INFINITE
    assert math.prod(FinitelyGeneratedAbelian([1, 4]).invariants) == 4
