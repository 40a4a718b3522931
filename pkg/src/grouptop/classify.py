"""Rule engine deciding Z_mon-, C'- and Z-cofiniteness of described groups.

Verdicts are three-valued. Each one carries the id of the rule that produced
it and a one-line statement of the fact the rule applies. Rules that derive a
"no" from a violated necessary condition are tried before rules that derive a
"yes"; if both fire for the same property the engine raises, since that can
only be a bug in a rule.

Class inclusions enforced on every emitted report:

* zar_cofinite = yes implies mon_cofinite = yes and cen_cofinite = yes;
* mon_cofinite = yes implies prime_exponent = yes or WCL = yes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

from . import abelian as ab
from .abelian import AbelianDescriptor, classify_abelian, is_prime
from .cardinal import INFINITE, ExtendedNat, finite
from .groups import Group, direct_product
from .heisenberg import HeisenbergSpec
from .report import (NO, UNDECIDED, YES, ClassReport, ConsistencyError, Finding, Verdict,
                     record, v_and, v_not, v_or)
from .structure import is_solvable
from .topology import DEFAULT_CAP, topology


class UnknownGroupError(KeyError):
    pass


class VerificationError(AssertionError):
    pass


# -- descriptors -----------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiniteD:
    group: Group

    def __str__(self) -> str:
        return self.group.name


@dataclass(frozen=True)
class AbelianD:
    descriptor: AbelianDescriptor

    def __str__(self) -> str:
        return str(self.descriptor)


@dataclass(frozen=True)
class HeisenbergD:
    spec: HeisenbergSpec

    def __str__(self) -> str:
        return f"H({self.spec.ring_name})"


@dataclass(frozen=True)
class FreeD:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("free group rank must be at least 1")

    def __str__(self) -> str:
        return f"F{self.rank}"


@dataclass(frozen=True)
class ProductD:
    factors: tuple

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise ValueError("product needs at least one factor")
        object.__setattr__(self, "factors", factors)

    def __str__(self) -> str:
        return " x ".join(f"({f})" if isinstance(f, ProductD) else str(f) for f in self.factors)


@dataclass(frozen=True)
class QuotientD:
    """Quotient of ``base`` by a finite normal subgroup of the given order."""

    base: object
    kernel_order: int

    def __post_init__(self):
        if self.kernel_order < 1:
            raise ValueError("kernel order must be positive")

    def __str__(self) -> str:
        return f"({self.base})/N{self.kernel_order}"


@dataclass(frozen=True)
class KnownGroup:
    name: str
    prime: Optional[int] = None

    def __post_init__(self):
        if self.name not in KNOWLEDGE_BASE:
            raise UnknownGroupError(f"unknown group {self.name!r}; known: {', '.join(KNOWLEDGE_BASE)}")
        if self.prime is not None and not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")

    def __str__(self) -> str:
        return self.name if self.prime is None else f"{self.name}(p={self.prime})"


GroupDescriptor = Union[FiniteD, AbelianD, HeisenbergD, FreeD, ProductD, QuotientD, KnownGroup]


# Facts recorded as data, not computed. Values: verdict strings per property.
KNOWLEDGE_BASE: dict[str, dict] = {
    "tarski_monster": {
        "summary": ("infinite group whose nontrivial proper subgroups all have prime order p; "
                    "known to exist for all large enough p"),
        "is_finite": "no", "is_abelian": "no", "ATF": "no", "WCL": "no",
        "prime_exponent": "yes", "mon_cofinite": "yes", "cen_cofinite": "yes", "zar_cofinite": "no",
        "solvable": "no", "infinite_abelian_subgroup": "no",
        # constructions are only known for large odd primes
        "prime_floor": 1003,
        "why": {
            "ATF": "the p-socle is the whole (infinite) group",
            "mon_cofinite": "every group of prime exponent is Z_mon-cofinite",
            "cen_cofinite": "every proper centralizer is a subgroup of order p, hence finite",
            "zar_cofinite": ("the known constructions are countable and non-topologizable, "
                             "so Markov = Zariski is discrete, not cofinite"),
        },
    },
}


# -- per-descriptor profiles -----------------------------------------------------------------

AUX = ("solvable", "infinite_abelian_subgroup")


@dataclass
class Profile:
    subject: str
    findings: dict = field(default_factory=dict)
    exponent: Optional[ExtendedNat] = None  # None: unknown
    prime: Optional[int] = None  # the prime when prime_exponent is yes and known
    symbolic_prime: bool = False
    prime_floor: int = 2  # lower bound on a symbolic prime

    def v(self, key: str) -> Verdict:
        return self.findings[key].verdict

    def set(self, key: str, verdict: Verdict, rule: str, citation: str, value=None) -> None:
        self.findings[key] = Finding(verdict, rule, citation, value)


def _f(verdict, rule, citation, value=None) -> Finding:
    return Finding(verdict, rule, citation, value)


FINITE_CITE = "finite group: every T1 topology on a finite set is discrete, i.e. cofinite"


def _finite_profile(G: Group, subject: str) -> Profile:
    p = Profile(subject)
    exp = G.exponent()
    p.exponent = finite(exp)
    p.prime = exp if is_prime(exp) else None
    p.set("is_finite", YES, "finite.given", f"order {len(G)}")
    p.set("is_abelian", Verdict.of(G.is_abelian()), "finite.table", "commutativity checked on the Cayley table")
    p.set("exponent", YES, "finite.exponent", "lcm of element orders", value=exp)
    p.set("ATF", YES, "finite.atf", "every socle of a finite group is finite")
    p.set("WCL", YES, "finite.wcl", "every map on a finite set is finitely-many-to-one")
    p.set("prime_exponent", Verdict.of(is_prime(exp)), "finite.exponent", "exponent is a prime number")
    p.set("solvable", Verdict.of(is_solvable(G)), "finite.derived_series", "derived series reaches {e}")
    p.set("infinite_abelian_subgroup", NO, "finite.given", "finite groups have no infinite subgroups")
    return p


def _abelian_profile(D: AbelianDescriptor, subject: str) -> Profile:
    rep = classify_abelian(D, subject)
    p = Profile(subject, dict(rep.findings))
    p.exponent = ab.exponent(D)
    p.prime = p.exponent.value if ab.is_prime_exponent(D) else None
    p.set("solvable", YES, "abelian.solvable", "abelian groups are solvable")
    p.set("infinite_abelian_subgroup", Verdict.of(not D.is_finite), "abelian.self",
          "an infinite abelian group is its own infinite abelian subgroup")
    return p


def _heisenberg_profile(spec: HeisenbergSpec, subject: str) -> Profile:
    if spec.is_finite:
        return _finite_profile(spec.to_group(), subject)
    p = Profile(subject)
    p.exponent = INFINITE
    p.set("is_finite", NO, "heisenberg.infinite", "components Z or Q are infinite")
    p.set("is_abelian", NO, "heisenberg.nondegenerate", "[(1,0,0),(0,1,0)] = (0,0,omega(1,1)) is nontrivial")
    p.set("exponent", NO, "heisenberg.torsion_free", "(1,0,0) has infinite order", value="inf")
    p.set("ATF", YES, "heisenberg.torsion_free", "u^n = e forces u = e over Z or Q")
    p.set("WCL", YES, "heisenberg.root_count",
          "with almost torsion-free components u^n = t has finitely many solutions (closed power formula)")
    p.set("prime_exponent", NO, "heisenberg.torsion_free", "unbounded exponent")
    p.set("solvable", YES, "heisenberg.class_two", "nilpotent of class 2")
    p.set("infinite_abelian_subgroup", YES, "heisenberg.center", "the center {(0,0,c)} is infinite abelian")
    return p


def _free_profile(rank: int, subject: str) -> Profile:
    if rank == 1:
        return _abelian_profile(AbelianDescriptor([ab.free(1)]), subject)
    p = Profile(subject)
    p.exponent = INFINITE
    p.set("is_finite", NO, "free.infinite", "free groups of positive rank are infinite")
    p.set("is_abelian", NO, "free.nonabelian", "ab != ba for distinct generators")
    p.set("exponent", NO, "free.torsion_free", "free groups are torsion-free", value="inf")
    p.set("ATF", YES, "free.torsion_free", "torsion-free groups have trivial socles")
    p.set("WCL", YES, "free.unique_roots", "free groups satisfy the cancellation law: n-th roots are unique")
    p.set("prime_exponent", NO, "free.torsion_free", "unbounded exponent")
    p.set("solvable", NO, "free.nonsolvable", "free groups of rank >= 2 are not solvable")
    p.set("infinite_abelian_subgroup", YES, "free.cyclic",
          "<a> is infinite cyclic, and centralizers are infinite cyclic")
    return p


def _known_profile(k: KnownGroup, subject: str) -> Profile:
    entry = KNOWLEDGE_BASE[k.name]
    p = Profile(subject)
    why = entry.get("why", {})
    for key in ("is_finite", "is_abelian", "ATF", "WCL", "prime_exponent") + AUX:
        p.set(key, Verdict(entry[key]), f"knowledge_base.{k.name}",
              f"knowledge-base fact (asserted, not computed): {why.get(key, entry['summary'])}")
    if k.prime is not None:
        p.exponent = finite(k.prime)
        p.prime = k.prime
        value = k.prime
    else:
        p.symbolic_prime = True
        p.prime_floor = entry.get("prime_floor", 2)
        value = "p"
    p.set("exponent", YES, f"knowledge_base.{k.name}", "knowledge-base fact (asserted, not computed): exponent p",
          value=value)
    return p


def _product_profile(d: ProductD, subject: str) -> Profile:
    parts = [profile(f) for f in d.factors]
    p = Profile(subject)
    p.set("is_finite", v_and(*(q.v("is_finite") for q in parts)), "product.finite", "finite iff every factor is finite")
    p.set("is_abelian", v_and(*(q.v("is_abelian") for q in parts)), "product.abelian", "abelian iff every factor is")
    exps = [q.exponent for q in parts]
    if any(e is not None and e.is_infinite for e in exps):
        p.exponent = INFINITE
    elif all(e is not None for e in exps):
        p.exponent = finite(math.lcm(*(e.value for e in exps)))
    if p.exponent is None:
        p.set("exponent", UNDECIDED, "product.exponent", "some factor has an unknown exponent")
    else:
        p.set("exponent", Verdict.of(p.exponent.is_finite), "product.exponent",
              "lcm of the factor exponents", value=p.exponent.to_json())
    p.set("ATF", v_and(*(q.v("ATF") for q in parts)), "product.atf",
          "G[n] of a finite product is the product of the factor socles")
    p.set("WCL", v_and(*(q.v("WCL") for q in parts)), "product.wcl",
          "WCL is finitely productive and inherited by subgroups")
    verdict, prime, symbolic = _common_prime_exponent(parts)
    p.prime, p.symbolic_prime = prime, symbolic
    if symbolic:
        p.prime_floor = max(q.prime_floor for q in parts if q.symbolic_prime)
    p.set("prime_exponent", verdict, "product.common_prime",
          "a finite product has prime exponent p iff every nontrivial factor has exponent p")
    p.set("solvable", v_and(*(q.v("solvable") for q in parts)), "product.solvable",
          "solvable iff every factor is")
    p.set("infinite_abelian_subgroup", v_or(*(q.v("infinite_abelian_subgroup") for q in parts)),
          "product.abelian_subgroup", "an abelian subgroup of a finite product projects onto abelian subgroups")
    p.parts = parts
    return p


def _common_prime_exponent(parts: list[Profile]):
    primes = set()
    symbolic = False
    pending = False
    for q in parts:
        if q.exponent is not None and q.exponent == 1:
            continue  # trivial factor
        v = q.v("prime_exponent")
        if v is NO:
            return NO, None, False
        if v is UNDECIDED:
            pending = True
        elif q.prime is not None:
            primes.add(q.prime)
        else:
            symbolic = True
    if len(primes) > 1:
        return NO, None, False
    if pending:
        return UNDECIDED, None, False
    if symbolic:
        floor = max(q.prime_floor for q in parts if q.symbolic_prime)
        if primes and max(primes) < floor:
            return NO, None, False
        if primes:
            return UNDECIDED, None, False
        if sum(1 for q in parts if q.symbolic_prime) > 1:
            return UNDECIDED, None, False
        return YES, None, True
    if not primes:
        return NO, None, False  # every factor trivial: exponent 1
    return YES, primes.pop(), False


def _quotient_profile(d: QuotientD, subject: str) -> Profile:
    base = profile(d.base)
    if d.kernel_order == 1:
        same = Profile(subject, dict(base.findings), base.exponent, base.prime, base.symbolic_prime, base.prime_floor)
        same.__dict__.update({k: v for k, v in base.__dict__.items() if k in ("parts", "base")})
        return same
    p = Profile(subject)
    p.set("is_finite", base.v("is_finite"), "quotient.finite_kernel",
          "a quotient by a finite subgroup is finite iff the group is")
    if base.v("is_abelian") is YES:
        p.set("is_abelian", YES, "quotient.abelian", "quotients of abelian groups are abelian")
    else:
        p.set("is_abelian", UNDECIDED, "quotient.unknown", "a quotient may become abelian")
    if (base.exponent is not None and base.exponent.is_finite) or base.symbolic_prime:
        p.set("exponent", YES, "quotient.exponent_divides", "the exponent divides the exponent of the group")
        if base.v("prime_exponent") is YES and base.v("is_finite") is NO:
            p.prime, p.symbolic_prime, p.prime_floor = base.prime, base.symbolic_prime, base.prime_floor
            p.exponent = base.exponent
            p.set("prime_exponent", YES, "quotient.prime_exponent",
                  "a nontrivial quotient of a group of prime exponent p has exponent p")
        else:
            p.set("prime_exponent", UNDECIDED, "quotient.unknown", "exponent of the quotient not determined")
    else:
        p.set("exponent", UNDECIDED, "quotient.unknown", "exponent of the quotient not determined")
        p.set("prime_exponent", UNDECIDED, "quotient.unknown", "exponent of the quotient not determined")
    if base.v("WCL") is YES:
        p.set("WCL", YES, "quotient.wcl", "WCL passes to quotients by finite normal subgroups")
        p.set("ATF", YES, "quotient.wcl", "WCL implies almost torsion-free")
    else:
        p.set("WCL", UNDECIDED, "quotient.unknown", "no transfer rule applies")
        p.set("ATF", UNDECIDED, "quotient.unknown", "no transfer rule applies")
    p.set("solvable", YES if base.v("solvable") is YES else UNDECIDED, "quotient.solvable",
          "quotients of solvable groups are solvable")
    if base.v("is_abelian") is YES and base.v("is_finite") is NO:
        p.set("infinite_abelian_subgroup", YES, "quotient.abelian", "infinite abelian quotient")
    elif base.v("is_finite") is YES:
        p.set("infinite_abelian_subgroup", NO, "quotient.finite", "finite quotient")
    else:
        p.set("infinite_abelian_subgroup", UNDECIDED, "quotient.unknown", "no transfer rule applies")
    p.base = base
    return p


@lru_cache(maxsize=None)
def _profile_cached(d) -> Profile:
    subject = str(d)
    if isinstance(d, FiniteD):
        return _finite_profile(d.group, subject)
    if isinstance(d, AbelianD):
        return _abelian_profile(d.descriptor, subject)
    if isinstance(d, HeisenbergD):
        return _heisenberg_profile(d.spec, subject)
    if isinstance(d, FreeD):
        return _free_profile(d.rank, subject)
    if isinstance(d, KnownGroup):
        return _known_profile(d, subject)
    if isinstance(d, ProductD):
        return _product_profile(d, subject)
    if isinstance(d, QuotientD):
        return _quotient_profile(d, subject)
    raise TypeError(f"not a group descriptor: {d!r}")


def profile(d) -> Profile:
    """Structural facts of ``d`` plus its three cofiniteness verdicts."""
    p = _profile_cached(d)
    if "zar_cofinite" not in p.findings:
        _decide_all(d, p)
    return p


# -- decision rules ------------------------------------------------------------------------

def _pick(prop: str, subject: str, no_rules, yes_rules, fallback: Finding) -> Finding:
    no = next((f for f in no_rules if f is not None), None)
    yes = next((f for f in yes_rules if f is not None), None)
    if no is not None and yes is not None:
        raise ConsistencyError(f"{subject}: {prop} both refuted by [{no.rule}] and established by [{yes.rule}]")
    return no or yes or fallback


def _infinite_nonabelian(p: Profile) -> Verdict:
    return v_and(v_not(p.v("is_finite")), v_not(p.v("is_abelian")))


def _decide_mon(d, p: Profile) -> Finding:
    fin = p.v("is_finite")
    no_rules, yes_rules = [], []
    if fin is YES:
        yes_rules.append(_f(YES, "finite.discrete", FINITE_CITE))
    if isinstance(d, ProductD):
        crit = v_or(p.v("WCL"), p.v("prime_exponent"))
        cite = ("infinite G1 x G2 is Z_mon-cofinite iff both factors are WCL "
                "or both have the same prime exponent p")
        if fin is NO and crit is NO:
            no_rules.append(_f(NO, "product.mon_criterion", cite))
        if crit is YES:
            yes_rules.append(_f(YES, "product.mon_criterion", cite))
    cite = "an infinite group is Z_mon-cofinite iff it has prime exponent or satisfies WCL"
    if fin is NO and p.v("prime_exponent") is NO and p.v("WCL") is NO:
        no_rules.append(_f(NO, "mon.prime_exponent_or_wcl", cite))
    if p.v("prime_exponent") is YES:
        yes_rules.append(_f(YES, "mon.prime_exponent", "every group of prime exponent is Z_mon-cofinite"))
    if p.v("WCL") is YES:
        yes_rules.append(_f(YES, "mon.wcl", "every WCL group is Z_mon-cofinite"))
    if isinstance(d, AbelianD):
        yes_rules.insert(0, p.findings["mon_cofinite"] if p.findings["mon_cofinite"].verdict is YES else None)
        no_rules.insert(0, p.findings["mon_cofinite"] if p.findings["mon_cofinite"].verdict is NO else None)
    if isinstance(d, KnownGroup):
        entry = KNOWLEDGE_BASE[d.name]
        f = _kb_finding(d, "mon_cofinite")
        (yes_rules if entry["mon_cofinite"] == "yes" else no_rules).insert(0, f)
    if isinstance(d, QuotientD) and p.base.v("mon_cofinite") is YES:
        yes_rules.append(_f(YES, "quotient.mon", "Z_mon-cofiniteness passes to quotients by finite normal subgroups"))
    return _pick("mon_cofinite", p.subject, no_rules, yes_rules,
                 _f(UNDECIDED, "mon.open", "neither prime exponent nor WCL could be decided"))


def _necessary_no_rules(p: Profile, prop: str) -> list:
    """Necessary conditions for infinite non-abelian C'-cofinite groups."""
    out = []
    if _infinite_nonabelian(p) is not YES:
        return out
    if p.v("infinite_abelian_subgroup") is YES:
        out.append(_f(NO, "cen.infinite_abelian_subgroup",
                      "an infinite non-abelian C'-cofinite group has no infinite abelian subgroup"))
    if p.v("solvable") is YES:
        out.append(_f(NO, "cen.solvable",
                      "an infinite non-abelian C'-cofinite group is not solvable"))
    if p.v("ATF") is YES:
        out.append(_f(NO, "cen.not_atf",
                      "an infinite non-abelian C'-cofinite group is not almost torsion-free"))
    if p.findings.get("mon_cofinite") is not None and p.v("mon_cofinite") is YES and p.prime in (2, 3):
        out.append(_f(NO, "cen.exponent_at_least_5",
                      "an infinite non-abelian C'- and Z_mon-cofinite group has prime exponent p >= 5"))
    if prop == "zar_cofinite":
        out = [_f(NO, "zar.via_cen:" + f.rule, "Z-cofinite implies C'-cofinite; " + f.citation) for f in out]
    return out


def _single_finite_abelian_factor(d: ProductD, p: Profile, prop: str) -> Optional[Finding]:
    """Infinite non-abelian G1 x G2: in the class iff one factor is finite abelian
    and the other is an infinite non-abelian member of the class."""
    name = "C'-cofinite" if prop == "cen_cofinite" else "Z-cofinite"
    cite = (f"infinite non-abelian G1 x G2 is {name} iff exactly one factor is finite abelian "
            f"and the other is infinite non-abelian and {name}")
    if _infinite_nonabelian(p) is not YES:
        return None
    fa = [v_and(q.v("is_finite"), q.v("is_abelian")) for q in p.parts]
    others = [q for q, v in zip(p.parts, fa) if v is not YES]
    if sum(1 for v in fa if v is NO) >= 2:
        return _f(NO, "product.one_finite_abelian_factor", cite)
    if len(others) == 1 and all(v is not UNDECIDED for v in fa):
        member = others[0].v(prop)
        if member is YES:
            return _f(YES, "product.one_finite_abelian_factor", cite)
        if member is NO:
            return _f(NO, "product.one_finite_abelian_factor", cite)
    return _f(UNDECIDED, "product.one_finite_abelian_factor", cite)


def _kb_finding(d: KnownGroup, key: str) -> Finding:
    entry = KNOWLEDGE_BASE[d.name]
    return _f(Verdict(entry[key]), f"knowledge_base.{d.name}",
              f"knowledge-base fact (asserted, not computed): {entry['why'].get(key, entry['summary'])}")


def _decide_cen(d, p: Profile) -> Finding:
    no_rules = list(_necessary_no_rules(p, "cen_cofinite"))
    yes_rules = []
    if p.v("is_finite") is YES:
        yes_rules.append(_f(YES, "finite.discrete", FINITE_CITE))
    if p.v("is_abelian") is YES:
        yes_rules.append(_f(YES, "abelian.cen_cofinite",
                            "abelian group: centralizer topology is indiscrete, so C' is the cofinite topology"))
    if isinstance(d, ProductD):
        f = _single_finite_abelian_factor(d, p, "cen_cofinite")
        if f is not None and f.verdict is YES:
            yes_rules.append(f)
        elif f is not None and f.verdict is NO:
            no_rules.append(f)
    if isinstance(d, FreeD) and d.rank >= 2:
        no_rules.insert(0, _f(NO, "free.infinite_centralizers",
                              "centralizers in a free group are infinite cyclic and proper"))
    if isinstance(d, HeisenbergD) and not d.spec.is_finite:
        no_rules.insert(0, _f(NO, "heisenberg.infinite_center",
                              "infinite non-abelian with the infinite abelian subgroup {(0,0,c)}"))
    if isinstance(d, KnownGroup):
        f = _kb_finding(d, "cen_cofinite")
        (yes_rules if f.verdict is YES else no_rules).insert(0, f)
    if isinstance(d, QuotientD) and p.base.v("cen_cofinite") is YES:
        yes_rules.append(_f(YES, "quotient.cen",
                            "finite normal subgroups of a C'-cofinite group are central, "
                            "and central quotients stay C'-cofinite"))
    return _pick("cen_cofinite", p.subject, no_rules, yes_rules,
                 _f(UNDECIDED, "cen.open", "no rule decides C'-cofiniteness here"))


def _decide_zar(d, p: Profile) -> Finding:
    no_rules = []
    yes_rules = []
    if p.v("is_finite") is YES:
        yes_rules.append(_f(YES, "finite.discrete", FINITE_CITE))
    if isinstance(d, AbelianD):
        f = p.findings["zar_cofinite"]
        (yes_rules if f.verdict is YES else no_rules).append(f)
    elif p.v("is_abelian") is YES:
        crit = v_or(p.v("ATF"), p.v("prime_exponent"))
        cite = ("abelian group: Zariski = monomial topology, cofinite iff "
                "almost torsion-free or of prime exponent")
        if crit is YES:
            yes_rules.append(_f(YES, "abelian.atf_or_prime_exponent", cite))
        elif crit is NO:
            no_rules.append(_f(NO, "abelian.atf_or_prime_exponent", cite))
    if p.v("cen_cofinite") is NO:
        no_rules.append(_f(NO, "zar.needs_cen", "Z-cofinite groups are C'-cofinite"))
    if p.v("mon_cofinite") is NO:
        no_rules.append(_f(NO, "zar.needs_mon", "Z-cofinite groups are Z_mon-cofinite"))
    if _infinite_nonabelian(p) is YES:
        if p.v("prime_exponent") is NO or p.prime in (2, 3):
            no_rules.append(_f(NO, "zar.prime_exponent_at_least_5",
                               "an infinite non-abelian Z-cofinite group has prime exponent p >= 5"))
        no_rules.extend(_necessary_no_rules(p, "zar_cofinite"))
    if isinstance(d, FreeD) and d.rank >= 2:
        no_rules.insert(0, _f(NO, "free.infinite_centralizers",
                              "Zariski = centralizer topology on a free group, with infinite proper closed sets"))
    if isinstance(d, ProductD):
        f = _single_finite_abelian_factor(d, p, "zar_cofinite")
        if f is not None and f.verdict is YES:
            yes_rules.append(f)
        elif f is not None and f.verdict is NO:
            no_rules.append(f)
    if isinstance(d, KnownGroup):
        f = _kb_finding(d, "zar_cofinite")
        (yes_rules if f.verdict is YES else no_rules).insert(0, f)
    if isinstance(d, QuotientD) and p.base.v("zar_cofinite") is YES:
        yes_rules.append(_f(YES, "quotient.zar",
                            "the quotient of a Z-cofinite group by a finite normal subgroup is Z-cofinite"))
    return _pick("zar_cofinite", p.subject, no_rules, yes_rules,
                 _f(UNDECIDED, "zar.open",
                    "passes every known necessary condition; membership is open for such groups"))


def _decide_all(d, p: Profile) -> None:
    p.findings["mon_cofinite"] = _decide_mon(d, p)
    p.findings["cen_cofinite"] = _decide_cen(d, p)
    p.findings["zar_cofinite"] = _decide_zar(d, p)
    # a late "no" on WCL follows from a "no" on ATF
    if p.v("WCL") is UNDECIDED and p.v("ATF") is NO:
        p.set("WCL", NO, "wcl.needs_atf", "WCL implies almost torsion-free")


# -- public surface -------------------------------------------------------------------------

def decide_WCL(d) -> Finding:
    return profile(d).findings["WCL"]


def decide_mon_cofinite(d) -> Finding:
    return profile(d).findings["mon_cofinite"]


def decide_cen_cofinite(d) -> Finding:
    return profile(d).findings["cen_cofinite"]


def decide_zar_cofinite(d) -> Finding:
    return profile(d).findings["zar_cofinite"]


def classify(d) -> ClassReport:
    p = profile(d)
    return record(ClassReport(p.subject, dict(p.findings)))


# -- finite-group oracle --------------------------------------------------------------------

def finite_group_of(d) -> Optional[Group]:
    if isinstance(d, FiniteD):
        return d.group
    if isinstance(d, HeisenbergD) and d.spec.is_finite:
        return d.spec.to_group()
    if isinstance(d, AbelianD) and d.descriptor.is_finite:
        from .groups import cyclic
        factors = [cyclic(b.param) for b in d.descriptor.blocks for _ in range(b.mult.value)]
        return direct_product(*factors) if factors else cyclic(1)
    if isinstance(d, ProductD):
        parts = [finite_group_of(f) for f in d.factors]
        if all(g is not None for g in parts):
            return direct_product(*parts)
    return None


def oracle_check_finite(d, cap: int = DEFAULT_CAP) -> ClassReport:
    """Recompute the three topologies on the actual finite group and compare.

    The monomial, Zariski and C' families must each equal the cofinite (here:
    discrete) family exactly when the rule engine says "yes".
    """
    G = finite_group_of(d)
    if G is None:
        raise ValueError(f"{d} is not a finite group descriptor")
    report = classify(d)
    cof = topology(G, "cofinite", cap)
    checks = {
        "mon_cofinite": topology(G, "monomial", cap),
        "cen_cofinite": topology(G, "c_prime", cap),
        "zar_cofinite": topology(G, "zariski_full", cap),
    }
    mismatches = []
    for key, fam in checks.items():
        observed = Verdict.of(fam == cof)
        if observed is not report.verdict(key):
            mismatches.append(f"{key}: rules say {report.verdict(key)}, families say {observed}")
    if mismatches:
        raise VerificationError(f"{report.subject}: " + "; ".join(mismatches))
    findings = dict(report.findings)
    findings["oracle"] = Finding(YES, "oracle.families",
                                 "monomial, Zariski and C' families recomputed and compared with the cofinite family")
    cen = topology(G, "centralizer", cap)
    findings["centralizer_T1"] = Finding(Verdict.of(cen.is_T1()), "oracle.centralizer_family",
                                         "centralizer topology alone is T1 iff the center is trivial")
    return record(ClassReport(report.subject, findings))
