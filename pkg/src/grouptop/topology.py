"""Closed-set families on finite carriers.

Subsets of an ``n``-point carrier are Python ints used as bit-vectors (bit i
set means point i is in the set).

On a finite set a family of closed sets that contains the empty set and the
whole carrier and is closed under finite unions and intersections is fixed by
the closure of each point: a set is closed exactly when it is the union of the
closures of its points. A :class:`ClosedSetFamily` therefore stores one closure
mask per point and materializes the full family only on request. The point
closure of ``x`` in the topology generated by a subbasis is the intersection of
the subbasic sets containing ``x``.

:func:`fixpoint_family` builds the same family the slow way, by closing the
subbasis under pairwise unions and intersections, and is kept as a cross-check.
"""

from __future__ import annotations

import json
import threading
from typing import Iterable, Optional, Sequence, Union

from .groups import Group
from .words import elementary_set, monomial

DEFAULT_CAP = 64
DEFAULT_SET_LIMIT = 1 << 16

SubsetLike = Union[int, Iterable[int]]


class TopologyCapError(ValueError):
    pass


def to_mask(subset: SubsetLike) -> int:
    if isinstance(subset, int):
        return subset
    m = 0
    for i in subset:
        idx = i.index if hasattr(i, "index") and not isinstance(i, int) else i
        m |= 1 << idx
    return m


def members(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def bitstring(mask: int, n: int) -> str:
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


class ClosedSetFamily:
    def __init__(self, n: int, point_closures: Sequence[int], label: str = "custom",
                 group: Optional[Group] = None):
        if len(point_closures) != n:
            raise ValueError("need one closure per point")
        self.n = n
        self.full = (1 << n) - 1
        self.point_closures = tuple(point_closures)
        self.label = label
        self.group = group
        for x, c in enumerate(self.point_closures):
            if not c >> x & 1:
                raise ValueError(f"closure of point {x} does not contain it")

    @classmethod
    def from_subbasis(cls, subbasis: Iterable[SubsetLike], n: int, label: str = "custom",
                      group: Optional[Group] = None, cap: int = DEFAULT_CAP) -> "ClosedSetFamily":
        if n > cap:
            raise TopologyCapError(f"carrier of size {n} exceeds cap {cap}")
        full = (1 << n) - 1
        closures = [full] * n
        for s in subbasis:
            m = to_mask(s)
            if m & ~full:
                raise ValueError("subbasic set leaves the carrier")
            bits = m
            i = 0
            while bits:
                if bits & 1:
                    closures[i] &= m
                bits >>= 1
                i += 1
        return cls(n, closures, label, group)

    # -- queries -------------------------------------------------------------------

    def closure(self, subset: SubsetLike) -> int:
        m = to_mask(subset)
        out = 0
        for i in members(m):
            out |= self.point_closures[i]
        return out

    def is_closed(self, subset: SubsetLike) -> bool:
        m = to_mask(subset)
        return self.closure(m) == m

    def is_T1(self) -> bool:
        return all(c == 1 << x for x, c in enumerate(self.point_closures))

    def is_discrete(self) -> bool:
        # on a finite carrier T1 and discrete coincide
        return self.is_T1()

    def is_indiscrete(self) -> bool:
        return all(c == self.full for c in self.point_closures)

    def __le__(self, other: "ClosedSetFamily") -> bool:
        """Family inclusion: every closed set of self is closed in other."""
        self._same_carrier(other)
        return all(other.is_closed(c) for c in self.point_closures)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedSetFamily):
            return NotImplemented
        return self.n == other.n and self.point_closures == other.point_closures

    def __hash__(self) -> int:
        return hash((self.n, self.point_closures))

    def _same_carrier(self, other: "ClosedSetFamily") -> None:
        if self.n != other.n:
            raise ValueError("families live on different carriers")

    def sets(self, limit: int = DEFAULT_SET_LIMIT) -> list[int]:
        """All closed sets, sorted; raises if there are more than ``limit``."""
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for s in frontier:
                for c in self.point_closures:
                    t = s | c
                    if t not in found:
                        found.add(t)
                        if len(found) > limit:
                            raise TopologyCapError(f"family has more than {limit} closed sets")
                        nxt.append(t)
            frontier = nxt
        found.add(self.full)
        return sorted(found)

    # -- lattice operations ------------------------------------------------------------

    def join(self, other: "ClosedSetFamily", label: Optional[str] = None) -> "ClosedSetFamily":
        """Coarsest family finer than both."""
        self._same_carrier(other)
        closures = [a & b for a, b in zip(self.point_closures, other.point_closures)]
        return ClosedSetFamily(self.n, closures, label or f"{self.label} v {other.label}", self.group)

    def meet(self, other: "ClosedSetFamily", label: Optional[str] = None) -> "ClosedSetFamily":
        """Sets closed in both families."""
        self._same_carrier(other)
        closures = []
        for x in range(self.n):
            m = 1 << x
            while True:
                nxt = other.closure(self.closure(m))
                if nxt == m:
                    break
                m = nxt
            closures.append(m)
        return ClosedSetFamily(self.n, closures, label or f"{self.label} ^ {other.label}", self.group)

    def restrict(self, subset: SubsetLike, label: Optional[str] = None) -> "ClosedSetFamily":
        """Subspace family on ``subset``, re-indexed by the sorted members."""
        pts = members(to_mask(subset))
        local = {p: k for k, p in enumerate(pts)}
        closures = []
        for p in pts:
            closures.append(to_mask(local[q] for q in members(self.point_closures[p]) if q in local))
        return ClosedSetFamily(len(pts), closures, label or f"{self.label}|H")

    def image(self, bijection: Sequence[int]) -> "ClosedSetFamily":
        """Push the family forward along a permutation of the carrier."""
        closures = [0] * self.n
        for x, c in enumerate(self.point_closures):
            closures[bijection[x]] = to_mask(bijection[q] for q in members(c))
        return ClosedSetFamily(self.n, closures, self.label, self.group)

    # -- output --------------------------------------------------------------------------

    def to_json(self, limit: int = DEFAULT_SET_LIMIT) -> dict:
        out = {
            "label": self.label,
            "carrier_size": self.n,
            "point_closures": [bitstring(c, self.n) for c in self.point_closures],
            "discrete": self.is_discrete(),
            "T1": self.is_T1(),
        }
        if self.group is not None:
            out["group"] = self.group.name
            out["labels"] = [self.group.label(i) for i in range(self.n)]
        try:
            out["closed_sets"] = sorted(bitstring(s, self.n) for s in self.sets(limit))
        except TopologyCapError:
            out["closed_sets"] = None
        return out

    def __repr__(self) -> str:
        return f"<ClosedSetFamily {self.label} on {self.n} points>"


def generate(subbasis: Iterable[SubsetLike], n: int, label: str = "custom",
             group: Optional[Group] = None, cap: int = DEFAULT_CAP) -> ClosedSetFamily:
    return ClosedSetFamily.from_subbasis(subbasis, n, label, group, cap)


def fixpoint_family(subbasis: Iterable[SubsetLike], n: int, limit: int = DEFAULT_SET_LIMIT) -> frozenset[int]:
    """Least family containing the subbasis, the empty set and the carrier,
    closed under pairwise union and intersection."""
    full = (1 << n) - 1
    family = {0, full} | {to_mask(s) for s in subbasis}
    frontier = set(family)
    while frontier:
        new = set()
        current = list(family)
        for a in frontier:
            for b in current:
                for c in (a | b, a & b):
                    if c not in family and c not in new:
                        new.add(c)
        family |= new
        if len(family) > limit:
            raise TopologyCapError(f"family has more than {limit} closed sets")
        frontier = new
    return frozenset(family)


def closure_from_subbasis(subset: SubsetLike, subbasis: Sequence[SubsetLike], n: int) -> int:
    """Closure of a set without building the family; works above the cap."""
    full = (1 << n) - 1
    masks = [to_mask(s) for s in subbasis]
    out = 0
    for x in members(to_mask(subset)):
        c = full
        for m in masks:
            if m >> x & 1:
                c &= m
        out |= c
    return out


def compare(t1: ClosedSetFamily, t2: ClosedSetFamily) -> str:
    """'<' when t1 is strictly coarser than t2, '>' when strictly finer."""
    le, ge = t1 <= t2, t2 <= t1
    if le and ge:
        return "="
    if le:
        return "<"
    if ge:
        return ">"
    return "incomparable"


# -- subbases on finite groups -----------------------------------------------------------

def singleton_subbasis(G: Group) -> list[int]:
    return [1 << i for i in range(len(G))]


def centralizer_subbasis(G: Group) -> list[int]:
    """The empty set and every left coset h C(g)."""
    seen = {0}
    out = [0]
    for g in range(len(G)):
        C = G.centralizer_idx(g)
        for h in range(len(G)):
            m = to_mask(G.table[h][c] for c in C)
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out


def monomial_subbasis(G: Group) -> list[int]:
    """Every fiber of every power map x -> x^n, 0 <= n <= exponent."""
    seen = set()
    out = []
    for n in range(G.exponent() + 1):
        fibers: dict[int, int] = {}
        for a in range(len(G)):
            t = G.pow_idx(a, n)
            fibers[t] = fibers.get(t, 0) | (1 << a)
        for t in range(len(G)):
            m = fibers.get(t, 0)
            if m not in seen:
                seen.add(m)
                out.append(m)
    return out


def linear_word_subbasis(G: Group) -> list[int]:
    """Solution sets E_{gx} computed through the word machinery."""
    return [to_mask(elementary_set(G, monomial(g, 1))) for g in G.elements()]


def zariski_subbasis(G: Group) -> list[int]:
    seen = set()
    out = []
    for m in linear_word_subbasis(G) + monomial_subbasis(G) + centralizer_subbasis(G):
        if m not in seen:
            seen.add(m)
            out.append(m)
    return out


def c_prime_subbasis(G: Group) -> list[int]:
    return centralizer_subbasis(G) + linear_word_subbasis(G)


SUBBASES = {
    "cofinite": singleton_subbasis,
    "monomial": monomial_subbasis,
    "centralizer": centralizer_subbasis,
    "c_prime": c_prime_subbasis,
    "zariski_full": zariski_subbasis,
}

_family_lock = threading.Lock()


def topology(G: Group, name: str, cap: int = DEFAULT_CAP) -> ClosedSetFamily:
    """One of the named families on G: cofinite, monomial, centralizer, c_prime, zariski_full."""
    try:
        builder = SUBBASES[name]
    except KeyError:
        raise KeyError(f"unknown topology {name!r}; known: {', '.join(SUBBASES)}") from None
    if len(G) > cap:
        raise TopologyCapError(f"group of order {len(G)} exceeds cap {cap}")
    key = ("topology", name)
    with _family_lock:
        cached = G._cache.get(key)
    if cached is not None:
        return cached
    fam = generate(builder(G), len(G), name, G, cap)
    with _family_lock:
        G._cache.setdefault(key, fam)
    return fam


def closure(subset: SubsetLike, family: ClosedSetFamily) -> int:
    return family.closure(subset)


def is_T1(family: ClosedSetFamily) -> bool:
    return family.is_T1()


def translations(G: Group):
    """Left translations, right translations and inversion, as index permutations."""
    n = len(G)
    for g in range(n):
        yield [G.table[g][x] for x in range(n)]
        yield [G.table[x][g] for x in range(n)]
    yield list(G.inverse)


def is_quasitopological(family: ClosedSetFamily, G: Group) -> bool:
    if family.n != len(G):
        raise ValueError("family does not live on this group")
    for f in translations(G):
        if family.image(f) != family:
            return False
    return True


# -- DOT output ---------------------------------------------------------------------------

def _set_label(mask: int, G: Optional[Group], n: int) -> str:
    pts = members(mask)
    if G is None:
        return "{" + ",".join(map(str, pts)) + "}"
    return "{" + ", ".join(G.label(i) for i in pts) + "}"


def hasse_dot(family: ClosedSetFamily, limit: int = 512) -> str:
    """Hasse diagram of the closed sets ordered by inclusion."""
    sets = family.sets(limit)
    index = {s: k for k, s in enumerate(sets)}
    lines = [f'digraph "{family.label}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for s in sets:
        label = _set_label(s, family.group, family.n).replace('"', '\\"')
        lines.append(f'  n{index[s]} [label="{label}"];')
    for a in sets:
        uppers = [b for b in sets if b != a and a & b == a]
        for b in uppers:
            if not any(c not in (a, b) and a & c == a and c & b == c for c in uppers):
                lines.append(f"  n{index[a]} -> n{index[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def lattice_topologies(G: Group, cap: int = DEFAULT_CAP) -> dict[str, ClosedSetFamily]:
    """The seven topologies of the comparison diagram, computed on G."""
    Z = topology(G, "zariski_full", cap)
    Cp = topology(G, "c_prime", cap)
    C = topology(G, "centralizer", cap)
    M = topology(G, "monomial", cap)
    cof = topology(G, "cofinite", cap)
    return {
        "Z": Z,
        "C'vZmon": Cp.join(M, "C'vZmon"),
        "C'": Cp,
        "C": C,
        "Zmon": M,
        "C'^Zmon": Cp.meet(M, "C'^Zmon"),
        "cof": cof,
    }


# (coarser, finer) pairs of the diagram
LATTICE_EDGES = (
    ("C'vZmon", "Z"), ("C'", "C'vZmon"), ("Zmon", "C'vZmon"),
    ("C'^Zmon", "C'"), ("C'^Zmon", "Zmon"), ("cof", "C'^Zmon"), ("C", "C'"),
)


def comparison_dot(G: Group, cap: int = DEFAULT_CAP) -> str:
    tops = lattice_topologies(G, cap)
    lines = [f'digraph "topologies on {G.name}" {{', "  rankdir=BT;", "  node [shape=ellipse];"]
    for name, fam in tops.items():
        tags = []
        if fam.is_discrete():
            tags.append("discrete")
        elif fam.is_indiscrete():
            tags.append("indiscrete")
        if fam.is_T1():
            tags.append("T1")
        label = name + (f"\\n({', '.join(tags)})" if tags else "")
        lines.append(f'  "{name}" [label="{label}"];')
    for lo, hi in LATTICE_EDGES:
        rel = compare(tops[lo], tops[hi])
        lines.append(f'  "{lo}" -> "{hi}" [label="{rel}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps_family(family: ClosedSetFamily, limit: int = DEFAULT_SET_LIMIT) -> str:
    return json.dumps(family.to_json(limit), indent=2, sort_keys=True)
