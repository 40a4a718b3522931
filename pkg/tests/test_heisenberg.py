import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from grouptop.heisenberg import (HeisenbergError, HeisenbergSpec, binomial2, h_commutator,
                                 h_inverse, h_multiply, h_power, h_power_iterated, h_solve_power,
                                 is_central, wcl_by_central_extension)
from grouptop.report import NO, UNDECIDED, YES
from grouptop.verify import power_with_coefficient, sum_coefficient

Z = HeisenbergSpec.over_ring("Z")
Q = HeisenbergSpec.over_ring("Q")
F3 = HeisenbergSpec.over_ring(3)


def test_power_examples():
    assert h_power(Z, (4, -2, 7), 0) == (0, 0, 0)
    assert h_power(Z, (1, 1, 0), 2) == (2, 2, 1)
    assert h_power(Z, (1, 1, 0), 3) == (3, 3, 3)
    assert binomial2(3) == 3 and binomial2(-2) == 3 and binomial2(1) == 0


def test_closed_form_matches_iteration_box():
    for u in itertools.product(range(-5, 6), repeat=3):
        for n in range(-12, 13):
            assert h_power(Z, u, n) == h_power_iterated(Z, u, n)
    for u in F3.elements():
        for n in range(0, 10):
            assert h_power(F3, u, n) == h_power_iterated(F3, u, n)


@pytest.mark.xfail(strict=True, reason="0+1+...+n is not the right coefficient: (1,1,0)^2 has last coordinate 1")
def test_sum_coefficient_matches_iteration_at_two():
    u = (1, 1, 0)
    assert power_with_coefficient(Z, u, 2, sum_coefficient) == h_power_iterated(Z, u, 2)


def test_sum_coefficient_is_off_at_two():
    assert sum_coefficient(2) == 3 and binomial2(2) == 1
    assert power_with_coefficient(Z, (1, 1, 0), 2, sum_coefficient) == (2, 2, 3)


def test_inverse_and_commutator():
    u, v = (2, -3, 5), (1, 4, -1)
    assert h_multiply(Z, u, h_inverse(Z, u)) == (0, 0, 0)
    assert h_commutator(Z, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    c = h_commutator(Z, u, v)
    assert c[:2] == (0, 0) and is_central(Z, c)
    assert not is_central(Z, (1, 0, 0))


def test_rational_arithmetic():
    u = (Fraction(1, 2), Fraction(2, 3), Fraction(-1, 5))
    assert h_power(Q, u, 6) == h_power_iterated(Q, u, 6)
    assert h_multiply(Q, u, h_inverse(Q, u)) == (0, 0, 0)


def test_solve_power_examples():
    assert h_solve_power(Z, 3, (3, 3, 3)).witnesses == ((1, 1, 0),)
    assert h_solve_power(Z, 2, (1, 0, 0)).is_empty
    ident = F3.identity()
    for t in F3.elements():
        sol = h_solve_power(F3, 3, t)
        if t == ident:
            assert len(sol) == 27
        else:
            assert sol.is_empty
    root = h_solve_power(Q, 5, (1, 2, 3)).witnesses[0]
    assert h_power(Q, root, 5) == (1, 2, 3)


@settings(max_examples=200, deadline=None)
@given(st.tuples(*[st.integers(-50, 50)] * 3), st.integers(1, 9))
def test_roots_unique_over_integers(u, n):
    sol = h_solve_power(Z, n, h_power(Z, u, n))
    assert sol.witnesses == (u,)


def test_wcl_central_extension():
    assert wcl_by_central_extension(YES, YES) is YES
    assert wcl_by_central_extension(NO, YES) is UNDECIDED
    assert wcl_by_central_extension(YES, UNDECIDED) is UNDECIDED
    # center of H(Z) is {(0,0,c)}: Z, and the quotient is Z^2, both WCL
    center = [u for u in itertools.product(range(-2, 3), repeat=3) if is_central(Z, u)]
    assert center == [(0, 0, c) for c in range(-2, 3)]


def test_finite_group_conversion():
    G = F3.to_group()
    assert len(G) == 27 and G.exponent() == 3 and len(G.center_idx()) == 3
    with pytest.raises(HeisenbergError):
        Z.to_group()


def test_pairing_spec():
    spec = HeisenbergSpec.from_pairing(2, 2, 2, [[0, 0], [0, 1]])
    assert spec.nondegenerate and spec.is_finite
    G = spec.to_group()
    assert len(G) == 8 and not G.is_abelian()
    with pytest.raises(HeisenbergError):
        HeisenbergSpec.from_pairing(2, 2, 2, [[0, 1], [1, 1]])
    deg = HeisenbergSpec.from_pairing(2, 2, 2, [[0, 0], [0, 0]])
    assert not deg.nondegenerate


def test_bad_ring():
    with pytest.raises(HeisenbergError):
        HeisenbergSpec.over_ring("R")
    with pytest.raises(HeisenbergError):
        h_solve_power(Z, 0, (0, 0, 0))
