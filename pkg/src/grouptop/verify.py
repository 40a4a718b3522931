"""Verification suites run by ``grouptop verify`` and the acceptance tests.

Each case is a zero-argument callable that returns a short detail string and
raises AssertionError on failure. Every ClassReport emitted while a suite runs
is collected and audited for class-inclusion violations.
"""

from __future__ import annotations

import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import abelian as ab
from . import free as fr
from .abelian import AbelianDescriptor, FinitelyGeneratedAbelian, solve_linear
from .cardinal import INFINITE
from .classify import (AbelianD, FiniteD, FreeD, HeisenbergD, KnownGroup, ProductD, QuotientD,
                       classify, decide_cen_cofinite, decide_mon_cofinite, decide_WCL,
                       decide_zar_cofinite, oracle_check_finite, profile)
from .corpus import CENTER_FREE, CORPUS_NAMES, corpus, corpus_group
from .heisenberg import HeisenbergSpec, h_multiply, h_power, h_power_iterated
from .report import NO, UNDECIDED, YES, collecting, v_and, v_or
from .structure import derived_series, engel_set_idx, fitting_subgroup, levi_vdw_check
from .topology import fixpoint_family, is_quasitopological, members, topology
from .words import commutator_word, fiber_idx


class UnknownSuiteError(KeyError):
    pass


@dataclass
class CaseResult:
    suite: str
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        return {"suite": self.suite, "name": self.name, "passed": self.passed,
                "detail": self.detail, "seconds": round(self.seconds, 3)}


@dataclass
class SuiteResult:
    cases: list
    violations: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases) and not self.violations

    def to_json(self, timings: bool = False) -> dict:
        cases = [c.to_json() for c in self.cases]
        if not timings:
            for c in cases:
                c.pop("seconds")
        return {"passed": self.passed, "total": len(self.cases),
                "failed": sum(not c.passed for c in self.cases),
                "consistency_violations": [list(v) for v in self.violations],
                "cases": cases}


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise AssertionError(message)


# -- core: word maps, centralizers --------------------------------------------------------

def check_centralizer_identity(max_order: int = 64) -> str:
    """E_{c_g} = C_G(g) for every corpus group and element."""
    count = 0
    for G in corpus(max_order):
        for g in range(len(G)):
            E = fiber_idx(commutator_word(G.element(g)), G.identity_idx)
            _check(E == G.centralizer_idx(g), f"{G.name}: E_(c_g) != C(g) at g={G.label(g)}")
            count += 1
    return f"{count} (group, element) pairs"


def check_center_is_intersection() -> str:
    for G in corpus():
        inter = frozenset(range(len(G)))
        for g in range(len(G)):
            inter &= G.centralizer_idx(g)
        _check(inter == G.center_idx(), f"{G.name}: Z(G) != intersection of centralizers")
    return f"{len(CORPUS_NAMES)} groups"


# -- topology ---------------------------------------------------------------------------

def check_centralizer_topology(max_order: int = 64) -> str:
    """closure({e}) = Z(G); quasi-topological; T1 exactly when center-free."""
    t1 = []
    for G in corpus(max_order):
        fam = topology(G, "centralizer")
        _check(set(members(fam.closure({G.identity_idx}))) == set(G.center_idx()),
               f"{G.name}: closure of {{e}} is not the center")
        _check(is_quasitopological(fam, G), f"{G.name}: centralizer topology not quasi-topological")
        _check(fam.is_T1() == (G.name in CENTER_FREE),
               f"{G.name}: T1={fam.is_T1()} but center-free={G.name in CENTER_FREE}")
        if fam.is_T1():
            t1.append(G.name)
    return "T1 on " + ", ".join(t1)


def check_finite_discreteness(max_order: int = 64, fixpoint_upto: int = 8) -> str:
    """Zariski and monomial families are discrete; C' is T1; the oracle agrees with the rules."""
    for G in corpus(max_order):
        for name in ("zariski_full", "monomial"):
            fam = topology(G, name)
            _check(fam.is_discrete(), f"{G.name}: {name} family is not the power set")
            if len(G) <= fixpoint_upto:
                full = fixpoint_family(_subbasis(G, name), len(G))
                _check(len(full) == 2 ** len(G), f"{G.name}: fixpoint {name} family has {len(full)} sets")
        _check(topology(G, "c_prime").is_T1(), f"{G.name}: C' family not T1")
        oracle_check_finite(FiniteD(G))
    return f"{len(corpus(max_order))} groups, 0 mismatches"


def _subbasis(G, name):
    from .topology import SUBBASES
    return SUBBASES[name](G)


def check_subgroup_heredity(max_order: int = 24) -> str:
    """Z_mon on a subgroup H equals Z_mon on G restricted to H."""
    from .structure import enumerate_subgroups
    pairs = 0
    for G in corpus(max_order):
        big = topology(G, "monomial")
        for H in enumerate_subgroups(G):
            # both sides are indexed by the sorted members of H
            sub, _ = G.subgroup_group(H.members)
            small = topology(sub, "monomial")
            restricted = big.restrict(H.members)
            _check(list(restricted.point_closures) == list(small.point_closures),
                   f"{G.name}: monomial topology of a subgroup differs from the restriction")
            pairs += 1
    return f"{pairs} (group, subgroup) pairs"


# -- Heisenberg ------------------------------------------------------------------------

def sum_coefficient(n: int) -> int:
    # 0 + 1 + ... + n; off by n from the true coefficient
    return n * (n + 1) // 2


def power_with_coefficient(spec: HeisenbergSpec, u, n: int, coef: Callable[[int], int]):
    a, b, c = spec.element(*u)
    return spec.element(n * a, n * b, n * c + coef(n) * spec.omega(a, b))


def check_heisenberg_power(box: int = 5, max_n: int = 12, mod3_n: int = 9,
                           coef: Optional[Callable[[int], int]] = None) -> str:
    """Closed-form powers against repeated multiplication.

    With ``coef`` left as None the library's h_power is checked; passing a
    coefficient function checks that variant of the formula instead.
    """
    def power(spec, u, n):
        return h_power(spec, u, n) if coef is None else power_with_coefficient(spec, u, n, coef)

    Z = HeisenbergSpec.over_ring("Z")
    count = 0
    for u in itertools.product(range(-box, box + 1), repeat=3):
        expect = Z.identity()
        for n in range(0, max_n + 1):
            _check(power(Z, u, n) == expect, f"Z: u={u} n={n}")
            expect = h_multiply(Z, expect, u)
            count += 1
        for n in range(-max_n, 0):
            _check(power(Z, u, n) == h_power_iterated(Z, u, n), f"Z: u={u} n={n}")
    F3 = HeisenbergSpec.over_ring(3)
    for u in F3.elements():
        for n in range(0, mod3_n + 1):
            _check(power(F3, u, n) == h_power_iterated(F3, u, n), f"Z/3: u={u} n={n}")
            count += 1
    return f"{count} (element, n) checks"


def check_sum_coefficient_fails() -> str:
    Z = HeisenbergSpec.over_ring("Z")
    u = (1, 1, 0)
    good = h_power(Z, u, 2)
    bad = power_with_coefficient(Z, u, 2, sum_coefficient)
    _check(good == h_power_iterated(Z, u, 2) == (2, 2, 1), f"square of {u} is {good}")
    _check(bad != good, "the sum 0+..+n coefficient unexpectedly agrees at n=2")
    return f"(1,1,0)^2 = {good}; the sum 0+1+2 coefficient would give {bad}"


def check_heisenberg_roots(max_n: int = 6) -> str:
    from .heisenberg import h_solve_power
    F3 = HeisenbergSpec.over_ring(3)
    for t in F3.elements():
        for n in range(1, max_n + 1):
            brute = sorted(u for u in F3.elements() if h_power_iterated(F3, u, n) == t)
            sol = h_solve_power(F3, n, t)
            _check(sorted(sol.witnesses) == brute, f"Z/3: roots of order {n} of {t}")
    Z = HeisenbergSpec.over_ring("Z")
    for u in itertools.product(range(-3, 4), repeat=3):
        for n in range(1, max_n + 1):
            sol = h_solve_power(Z, n, h_power(Z, u, n))
            _check(sol.witnesses == (u,), f"Z: unique n-th root of u^n for u={u}, n={n}")
    return "root sets match enumeration"


# -- abelian ---------------------------------------------------------------------------

def invariant_factor_lists(limit: int):
    """Every list d1, d2, ... with d_{i+1} | d_i, d_i >= 2 and product <= limit."""
    def rec(budget, last):
        yield []
        for d in range(2, budget + 1):
            if last is not None and last % d:
                continue
            for rest in rec(budget // d, d):
                yield [d] + rest
    return rec(limit, None)


def _order_histogram(factors) -> dict[int, int]:
    hist = {1: 1}
    for d in factors:
        new: dict[int, int] = {}
        for x in range(d):
            o = d // math.gcd(x, d)
            for k, c in hist.items():
                key = math.lcm(k, o)
                new[key] = new.get(key, 0) + c
        hist = new
    return hist


def _enumerated_socle(factors, n: int) -> int:
    return sum(1 for x in itertools.product(*(range(d) for d in factors))
               if all((n * xi) % d == 0 for xi, d in zip(x, factors)))


def check_socle_oracle(limit: int = 1000, max_n: int = 24, enumerate_upto: int = 256) -> str:
    """Closed-form socle sizes against element counts.

    Small groups are enumerated tuple by tuple; larger ones through the
    exact order histogram of their elements.
    """
    groups = 0
    for inv in invariant_factor_lists(limit):
        D = AbelianDescriptor([ab.cyclic(d) for d in inv])
        order = math.prod(inv)
        hist = None if order <= enumerate_upto else _order_histogram(inv)
        for n in range(1, max_n + 1):
            if hist is None:
                brute = _enumerated_socle(inv, n)
            else:
                brute = sum(c for k, c in hist.items() if n % k == 0)
            _check(ab.socle_cardinality(D, n).value == brute, f"{inv}: |G[{n}]|")
        groups += 1
    return f"{groups} groups of order <= {limit}, n <= {max_n}"


def check_solve_linear(max_order: int = 36, max_n: int = 8) -> str:
    cases = 0
    for inv in invariant_factor_lists(max_order):
        G = FinitelyGeneratedAbelian(sorted(inv), 0)
        elems = list(G.elements())
        for n in range(0, max_n + 1):
            image: dict = {}
            for x in elems:
                image.setdefault(G.normalize([n * v for v in x]), []).append(x)
            for a in elems:
                sol = solve_linear(G, n, a)
                expect = len(image.get(G.normalize(a), []))
                _check(len(sol) == expect, f"{inv}: n={n}, a={a}: {len(sol)} != {expect}")
                cases += 1
    return f"{cases} equations"


def check_abelian_closed_forms() -> str:
    expect = {
        "Z": (YES, YES, YES), "Q/Z": (YES, YES, YES), "Q/Z^(w)": (NO, NO, NO),
        "Z(2^inf)^(w)": (NO, NO, NO), "C5^(w)": (NO, YES, YES), "C6^(w)": (NO, NO, NO),
        "Q": (YES, YES, YES), "Z^(w)": (YES, YES, YES),
    }
    for name, (atf, mon, zar) in expect.items():
        d = SYMBOLIC[name]
        r = classify(d)
        got = (r.verdict("ATF"), r.verdict("mon_cofinite"), r.verdict("zar_cofinite"))
        _check(got == (atf, mon, zar), f"{name}: {got}")
        _check(decide_WCL(d).verdict is r.verdict("ATF"), f"{name}: WCL differs from ATF")
    return f"{len(expect)} abelian descriptors"


# -- free groups -----------------------------------------------------------------------

def check_free_roots(max_length: int = 8, exponents=(2, 3, 4)) -> str:
    words = [w.letters for w in fr.reduced_words(2, max_length)]
    word_set = set(words)
    for n in exponents:
        roots: dict = {}
        for u in words:
            p = u
            for _ in range(n - 1):
                p = fr.join_reduced(p, u)
            if p in word_set:
                roots.setdefault(p, []).append(u)
        for w in words:
            found = roots.get(w, [])
            _check(len(found) <= 1, f"{fr.format_free_word(fr.FreeWord(2, w))} has {len(found)} {n}-th roots")
            sol = fr.f_nth_root(fr.FreeWord(2, w), n)
            _check(list(sol.witnesses) == found, f"f_nth_root disagrees on {w} for n={n}")
    return f"{len(words)} words, exponents {list(exponents)}"


def check_free_commuting(max_length: int = 6) -> str:
    words = [w for w in fr.reduced_words(2, max_length) if not w.is_identity]
    letters = [w.letters for w in words]
    roots = []
    for w in words:
        r = fr.primitive_root(w)[0]
        roots.append(min(r.letters, fr.f_inverse(r).letters))
    commuting = 0
    join = fr.join_reduced
    for i, u in enumerate(letters):
        for j in range(i, len(letters)):
            v = letters[j]
            if join(u, v) == join(v, u):
                commuting += 1
                _check(roots[i] == roots[j], f"{u} and {v} commute without sharing a primitive root")
    return f"{len(words)} words, {commuting} commuting pairs"


# -- structure ----------------------------------------------------------------------------

ENGEL_GROUPS = ("S3", "S4", "A4", "D4", "Q8", "Heis3") + tuple(f"C{n}" for n in range(2, 13))


def check_engel_equals_fitting() -> str:
    for name in ENGEL_GROUPS:
        G = corpus_group(name)
        _check(engel_set_idx(G) == fitting_subgroup(G).members, f"{name}: L(G) != F(G)")
    return ", ".join(ENGEL_GROUPS)


def check_levi_and_derived() -> str:
    H = corpus_group("Heis3")
    _check(H.exponent() == 3 and levi_vdw_check(H), "Heis3 fails the conjugate-commuting identity")
    S4 = corpus_group("S4")
    sizes = [len(X) for X in derived_series(S4)]
    _check(sizes == [24, 12, 4, 1], f"derived series of S4 has sizes {sizes}")
    return "Heis3 exponent 3 identity holds; S4 > A4 > V4 > 1"


def check_class_two_identities() -> str:
    from .structure import (check_commutator_bilinearity, centralizer_index_matches_image,
                            nilpotency_class)
    done = []
    for G in corpus():
        c = nilpotency_class(G)
        if c is not None and c <= 2:
            _check(check_commutator_bilinearity(G), f"{G.name}: bilinearity fails")
            _check(centralizer_index_matches_image(G), f"{G.name}: [G:C(g)] != |image|")
            done.append(G.name)
    return f"{len(done)} groups of class <= 2"


# -- classification ---------------------------------------------------------------------

def _ab(*blocks) -> AbelianD:
    return AbelianD(AbelianDescriptor(blocks))


SYMBOLIC = {
    "Z": _ab(ab.free()),
    "Z^(w)": _ab(ab.free(INFINITE)),
    "Q": _ab(ab.rational()),
    "Q/Z": _ab(ab.qmodz()),
    "Q/Z^(w)": _ab(ab.qmodz(INFINITE)),
    "Z(2^inf)": _ab(ab.prufer(2)),
    "Z(2^inf)^(w)": _ab(ab.prufer(2, INFINITE)),
    "Z(2^inf)+Z(3^inf)": _ab(ab.prufer(2), ab.prufer(3)),
    "C5^(w)": _ab(ab.cyclic(5, INFINITE)),
    "C6^(w)": _ab(ab.cyclic(6, INFINITE)),
    "C2^(w)": _ab(ab.cyclic(2, INFINITE)),
    "C3^(w)": _ab(ab.cyclic(3, INFINITE)),
    "Z+C2^(w)": _ab(ab.free(), ab.cyclic(2, INFINITE)),
    "Z+C4": _ab(ab.free(), ab.cyclic(4)),
    "H(Z)": HeisenbergD(HeisenbergSpec.over_ring("Z")),
    "H(Q)": HeisenbergD(HeisenbergSpec.over_ring("Q")),
    "H(Z/3)": HeisenbergD(HeisenbergSpec.over_ring(3)),
    "F2": FreeD(2),
    "F3": FreeD(3),
    "tarski": KnownGroup("tarski_monster"),
    "S3": FiniteD(corpus_group("S3")),
    "C5": FiniteD(corpus_group("C5")),
}

# verdicts quoted from the worked examples: (property, expected)
REFERENCE_VERDICTS = [
    ("F2", "WCL", YES), ("F2", "mon_cofinite", YES), ("F2", "cen_cofinite", NO), ("F2", "zar_cofinite", NO),
    ("H(Z)", "WCL", YES), ("H(Z)", "cen_cofinite", NO),
    ("tarski", "mon_cofinite", YES), ("tarski", "cen_cofinite", YES), ("tarski", "zar_cofinite", NO),
    ("Q/Z", "ATF", YES), ("Q/Z", "mon_cofinite", YES), ("Q/Z", "zar_cofinite", YES),
    ("Q/Z^(w)", "mon_cofinite", NO),
    ("Z", "zar_cofinite", YES),
    ("S3", "WCL", YES),
]


def check_mon_criterion() -> str:
    for name, d in SYMBOLIC.items():
        r = classify(d)
        if r.verdict("is_finite") is YES:
            _check(r.verdict("mon_cofinite") is YES, f"{name}: finite but mon not yes")
            continue
        crit = v_or(r.verdict("prime_exponent"), r.verdict("WCL"))
        _check(r.verdict("mon_cofinite") is crit, f"{name}: mon={r.verdict('mon_cofinite')} but criterion={crit}")
    return f"{len(SYMBOLIC)} descriptors"


def check_reference_verdicts() -> str:
    for name, key, expect in REFERENCE_VERDICTS:
        got = classify(SYMBOLIC[name]).verdict(key)
        _check(got is expect, f"{name}.{key} = {got}, expected {expect}")
    return f"{len(REFERENCE_VERDICTS)} reference verdicts"


def _same_prime(p1, p2):
    v1, v2 = p1.v("prime_exponent"), p2.v("prime_exponent")
    if v1 is NO or v2 is NO:
        return NO
    if v1 is UNDECIDED or v2 is UNDECIDED:
        return UNDECIDED
    if p1.prime is not None and p2.prime is not None:
        return YES if p1.prime == p2.prime else NO
    if p1.symbolic_prime and p2.symbolic_prime:
        return UNDECIDED
    known = p1.prime if p1.prime is not None else p2.prime
    floor = p1.prime_floor if p1.symbolic_prime else p2.prime_floor
    return NO if known < floor else UNDECIDED


def check_product_mon_rule() -> str:
    pairs = 0
    for (n1, d1), (n2, d2) in itertools.product(SYMBOLIC.items(), repeat=2):
        d = ProductD([d1, d2])
        p1, p2 = profile(d1), profile(d2)
        got = decide_mon_cofinite(d).verdict
        if v_and(p1.v("is_finite"), p2.v("is_finite")) is YES:
            expect = YES
        else:
            expect = v_or(v_and(p1.v("WCL"), p2.v("WCL")), _same_prime(p1, p2))
        _check(got is expect, f"{n1} x {n2}: mon={got}, componentwise rule gives {expect}")
        classify(d)
        pairs += 1
    return f"{pairs} ordered pairs"


def check_product_cen_examples() -> str:
    S3Z = ProductD([SYMBOLIC["S3"], SYMBOLIC["Z"]])
    TC2 = ProductD([SYMBOLIC["tarski"], FiniteD(corpus_group("C2"))])
    _check(decide_cen_cofinite(S3Z).verdict is NO, "S3 x Z should not be C'-cofinite")
    _check(decide_cen_cofinite(TC2).verdict is YES, "tarski x C2 should be C'-cofinite")
    _check(decide_zar_cofinite(TC2).verdict is NO, "tarski x C2 should not be Z-cofinite")
    return "S3 x Z: cen=no; tarski x C2: cen=yes, zar=no"


def check_finite_products(max_order: int = 48) -> str:
    names = [n for n in CORPUS_NAMES if len(corpus_group(n)) <= max_order // 2]
    seen = set()
    count = 0
    for a, b in itertools.combinations_with_replacement(names, 2):
        Ga, Gb = corpus_group(a), corpus_group(b)
        if len(Ga) * len(Gb) > max_order:
            continue
        key = tuple(sorted((a, b)))
        if key in seen:
            continue
        seen.add(key)
        oracle_check_finite(ProductD([FiniteD(Ga), FiniteD(Gb)]))
        count += 1
    return f"{count} finite products up to order {max_order}"


def check_quotients() -> str:
    from .groups import quotient
    Q8 = corpus_group("Q8")
    Q = quotient(Q8, Q8.center_idx())
    oracle_check_finite(FiniteD(Q))
    r = classify(QuotientD(SYMBOLIC["H(Z)"], 2))
    _check(r.verdict("WCL") is YES and r.verdict("mon_cofinite") is YES, "WCL should pass to the quotient")
    return "Q8/Z(Q8) oracle agrees; H(Z)/N2 keeps WCL"


SUITES: dict[str, list] = {
    "core": [
        ("centralizer_is_commutator_fiber", check_centralizer_identity),
        ("center_is_intersection_of_centralizers", check_center_is_intersection),
    ],
    "topology": [
        ("centralizer_topology_closure_and_T1", check_centralizer_topology),
        ("finite_families_discrete", check_finite_discreteness),
        ("monomial_topology_hereditary", check_subgroup_heredity),
    ],
    "heisenberg": [
        ("power_formula_oracle", check_heisenberg_power),
        ("sum_coefficient_disagrees_at_2", check_sum_coefficient_fails),
        ("root_sets", check_heisenberg_roots),
    ],
    "abelian": [
        ("socle_closed_form", check_socle_oracle),
        ("solve_linear_counts", check_solve_linear),
        ("closed_form_verdicts", check_abelian_closed_forms),
    ],
    "free": [
        ("unique_roots", check_free_roots),
        ("commuting_pairs_share_root", check_free_commuting),
    ],
    "structure": [
        ("engel_equals_fitting", check_engel_equals_fitting),
        ("levi_and_derived_series", check_levi_and_derived),
        ("class_two_identities", check_class_two_identities),
    ],
    "classification": [
        ("mon_iff_prime_exponent_or_wcl", check_mon_criterion),
        ("reference_verdicts", check_reference_verdicts),
        ("product_mon_rule", check_product_mon_rule),
        ("product_cen_examples", check_product_cen_examples),
        ("finite_products_oracle", check_finite_products),
        ("quotients", check_quotients),
    ],
}


def _run_case(suite: str, name: str, fn) -> CaseResult:
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"FAILED: {exc}", False
    except Exception as exc:  # a crash is a failure, not an abort of the whole run
        detail, ok = f"ERROR: {type(exc).__name__}: {exc}", False
    return CaseResult(suite, name, ok, detail, time.perf_counter() - start)


def run(suite: str = "all", jobs: int = 1) -> SuiteResult:
    if suite == "all":
        names = list(SUITES)
    elif suite in SUITES:
        names = [suite]
    else:
        raise UnknownSuiteError(f"unknown suite {suite!r}; known: all, {', '.join(SUITES)}")
    todo = [(s, n, fn) for s in names for n, fn in SUITES[s]]
    with collecting() as log:
        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(lambda t: _run_case(*t), todo))
        else:
            results = [_run_case(*t) for t in todo]
    return SuiteResult(results, log.violations())
