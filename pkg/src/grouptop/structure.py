"""Structural subroutines for finite groups.

Centralizers, normalizers, central and derived series, subgroup enumeration,
Engel elements and the Fitting subgroup. Commutators follow
``[g, h] = g h g^-1 h^-1`` and iterated commutators ``[g,_0 x] = g``,
``[g,_{n+1} x] = [[g,_n x], x]``.

The Engel set collects the left Engel elements: x such that [g,_n x] = e
eventually, for every g. With x in the iterated slot instead one gets the right
Engel elements, which in a finite group form the hypercenter; for S3 that is
{e}, while the Fitting subgroup is A3.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional

from .groups import Element, Group, NotASubgroupError
from .words import conjugation_word, word_map_idx

DEFAULT_SUBGROUP_CAP = 48


class PreconditionError(ValueError):
    pass


class CapExceeded(ValueError):
    pass


class Cancelled(RuntimeError):
    pass


class CancellationToken:
    def __init__(self):
        self._event = threading.Event()

    def cancel(self) -> None:
        self._event.set()

    @property
    def cancelled(self) -> bool:
        return self._event.is_set()

    def check(self) -> None:
        if self._event.is_set():
            raise Cancelled("enumeration cancelled")


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    group: Group
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.group.is_subgroup_idx(self.members):
            raise NotASubgroupError(f"subset of {self.group.name} is not a subgroup")

    @classmethod
    def of(cls, G: Group, elements: Iterable) -> "SubgroupSet":
        return cls(G, G.indices(elements))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, Element):
            return item.group is self.group and item.index in self.members
        return item in self.members

    def __eq__(self, other) -> bool:
        if isinstance(other, SubgroupSet):
            return self.group is other.group and self.members == other.members
        return NotImplemented

    def __hash__(self) -> int:
        return hash((id(self.group), self.members))

    def __le__(self, other: "SubgroupSet") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "SubgroupSet") -> bool:
        return self.members < other.members

    def elements(self) -> list[Element]:
        return [Element(self.group, i) for i in sorted(self.members)]

    def labels(self) -> list[str]:
        return [self.group.label(i) for i in sorted(self.members)]

    @cached_property
    def is_normal(self) -> bool:
        return self.group.is_normal_idx(self.members)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.group.table
        return all(t[a][b] == t[b][a] for a in self.members for b in self.members)

    @cached_property
    def is_nilpotent(self) -> bool:
        H, _ = self.group.subgroup_group(self.members)
        return is_nilpotent(H)

    def __repr__(self) -> str:
        return f"<SubgroupSet of {self.group.name}: {{{', '.join(self.labels())}}}>"


def _as_indices(G: Group, H) -> frozenset:
    if isinstance(H, SubgroupSet):
        if H.group is not G:
            raise NotASubgroupError("subgroup belongs to a different group")
        return H.members
    return G.indices(H)


# -- centralizers and normalizers --------------------------------------------------------

def center(G: Group) -> SubgroupSet:
    return SubgroupSet(G, G.center_idx())


def centralizer(G: Group, g: Element) -> SubgroupSet:
    return SubgroupSet(G, G.centralizer_idx(G.check(g)))


def normalizer(G: Group, H) -> SubgroupSet:
    """Intersection over h in H of the preimages of H under x -> x^-1 h x."""
    members = _as_indices(G, H)
    if not G.is_subgroup_idx(members):
        raise NotASubgroupError("normalizer needs a subgroup")
    result = set(range(len(G)))
    for h in members:
        values = word_map_idx(conjugation_word(G.element(h)))
        result &= {x for x, v in enumerate(values) if v in members}
    return SubgroupSet(G, result)


def generated(G: Group, elements: Iterable) -> SubgroupSet:
    return SubgroupSet(G, G.generated_idx(G.indices(elements)))


def commutator_subgroup_idx(G: Group, A: frozenset, B: frozenset) -> frozenset:
    return G.generated_idx({G.commutator_idx(a, b) for a in A for b in B})


# -- series -----------------------------------------------------------------------------

def _next_center(G: Group, prev: frozenset) -> frozenset:
    return frozenset(x for x in range(len(G))
                     if all(G.commutator_idx(x, g) in prev for g in range(len(G))))


def upper_central_series(G: Group) -> list[SubgroupSet]:
    """Z_1 <= Z_2 <= ... up to the first repeated term (listed once)."""
    series = []
    prev = frozenset({G.identity_idx})
    while True:
        nxt = _next_center(G, prev)
        series.append(SubgroupSet(G, nxt))
        if nxt == prev or len(nxt) == len(G):
            return series
        prev = nxt


def derived_series(G: Group) -> list[SubgroupSet]:
    """G >= G' >= G'' >= ... up to the first repeated term (listed once)."""
    current = frozenset(range(len(G)))
    series = [SubgroupSet(G, current)]
    while True:
        nxt = commutator_subgroup_idx(G, current, current)
        if nxt == current:
            return series
        series.append(SubgroupSet(G, nxt))
        current = nxt


def lower_central_series(G: Group) -> list[SubgroupSet]:
    whole = frozenset(range(len(G)))
    current = whole
    series = [SubgroupSet(G, current)]
    while True:
        nxt = commutator_subgroup_idx(G, current, whole)
        if nxt == current:
            return series
        series.append(SubgroupSet(G, nxt))
        current = nxt


def nilpotency_class(G: Group) -> Optional[int]:
    """Class c with Z_c = G, 0 for the trivial group, None when not nilpotent."""
    if len(G) == 1:
        return 0
    series = upper_central_series(G)
    if len(series[-1]) != len(G):
        return None
    return len(series)


def is_nilpotent(G: Group) -> bool:
    return nilpotency_class(G) is not None


def is_solvable(G: Group) -> bool:
    return len(derived_series(G)[-1]) == 1


# -- class two identities -----------------------------------------------------------------

def _require_class_at_most_two(G: Group) -> None:
    c = nilpotency_class(G)
    if c is None or c > 2:
        raise PreconditionError(f"{G.name} does not have nilpotency class <= 2")


def check_commutator_bilinearity(G: Group) -> bool:
    """[ab, g] = [a, g][b, g] for all triples, and x -> [x, g] has kernel C(g)."""
    _require_class_at_most_two(G)
    n = len(G)
    t = G.table
    comm = [[G.commutator_idx(x, g) for g in range(n)] for x in range(n)]
    for g in range(n):
        for a in range(n):
            for b in range(n):
                if comm[t[a][b]][g] != t[comm[a][g]][comm[b][g]]:
                    return False
        kernel = frozenset(x for x in range(n) if comm[x][g] == G.identity_idx)
        if kernel != G.centralizer_idx(g):
            return False
    return True


def centralizer_index_matches_image(G: Group) -> bool:
    """[G : C(g)] equals the size of the image of x -> [x, g], for every g."""
    _require_class_at_most_two(G)
    for g in range(len(G)):
        image = {G.commutator_idx(x, g) for x in range(len(G))}
        if len(G) // len(G.centralizer_idx(g)) != len(image):
            return False
    return True


# -- subgroups, Engel elements, Fitting subgroup ----------------------------------------

def _check_cap(G: Group, cap: int) -> None:
    if len(G) > cap:
        raise CapExceeded(f"group of order {len(G)} exceeds cap {cap}")


def enumerate_subgroups(G: Group, cap: int = DEFAULT_SUBGROUP_CAP,
                        cancel: Optional[CancellationToken] = None) -> list[SubgroupSet]:
    """All subgroups: cyclic ones first, then joins until nothing new appears."""
    _check_cap(G, cap)
    found = {G.generated_idx([g]) for g in range(len(G))}
    frontier = set(found)
    while frontier:
        new = set()
        current = list(found)
        for A in frontier:
            if cancel is not None:
                cancel.check()
            for B in current:
                if A <= B or B <= A:
                    continue
                J = G.generated_idx(A | B)
                if J not in found:
                    new.add(J)
        found |= new
        frontier = new
    return sorted((SubgroupSet(G, s) for s in found), key=lambda H: (len(H), sorted(H.members)))


def normal_subgroups(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> list[SubgroupSet]:
    return [H for H in enumerate_subgroups(G, cap) if H.is_normal]


def iterated_commutator_reaches_identity(G: Group, g: int, x: int) -> bool:
    """Whether [g,_n x] = e for some n; a repeated value means never."""
    seen = set()
    v = g
    while v != G.identity_idx:
        if v in seen:
            return False
        seen.add(v)
        v = G.commutator_idx(v, x)
    return True


def engel_set(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> frozenset[Element]:
    _check_cap(G, cap)
    return frozenset(Element(G, x) for x in engel_set_idx(G))


def engel_set_idx(G: Group) -> frozenset:
    n = len(G)
    return frozenset(x for x in range(n)
                     if all(iterated_commutator_reaches_identity(G, g, x) for g in range(n)))


def fitting_subgroup(G: Group, cap: int = DEFAULT_SUBGROUP_CAP,
                     cancel: Optional[CancellationToken] = None) -> SubgroupSet:
    """Join of all nilpotent normal subgroups."""
    _check_cap(G, cap)
    gens: set = set()
    for H in enumerate_subgroups(G, cap, cancel):
        if H.is_normal and H.is_nilpotent:
            gens |= H.members
    return SubgroupSet(G, G.generated_idx(gens))


def levi_vdw_check(G: Group) -> bool:
    """In exponent 3 every element commutes with all of its conjugates."""
    if G.exponent() != 3:
        raise PreconditionError(f"{G.name} has exponent {G.exponent()}, not 3")
    t = G.table
    for x in range(len(G)):
        for y in range(len(G)):
            c = G.conj_idx(y, x)
            if t[x][c] != t[c][x]:
                return False
    return True


def structure_report(G: Group, cap: int = DEFAULT_SUBGROUP_CAP) -> dict:
    def idx(H):
        return sorted(H.members)

    ncls = nilpotency_class(G)
    out = {
        "group": G.name,
        "order": len(G),
        "exponent": G.exponent(),
        "abelian": G.is_abelian(),
        "center": idx(center(G)),
        "upper_central_series": [idx(H) for H in upper_central_series(G)],
        "derived_series": [idx(H) for H in derived_series(G)],
        "nilpotency_class": ncls,
        "solvable": is_solvable(G),
        "labels": [G.label(i) for i in range(len(G))],
    }
    if len(G) <= cap:
        out["engel_set"] = sorted(engel_set_idx(G))
        out["fitting_subgroup"] = idx(fitting_subgroup(G, cap))
    return out
