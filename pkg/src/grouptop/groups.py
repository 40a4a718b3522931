"""Finite groups as Cayley tables over element indices.

Every concrete group is materialized: elements are numbered ``0..n-1``, the
product lives in ``table[i][j]`` and each element keeps a representation-specific
payload (an integer, a permutation image tuple, a coset, ...). Methods ending in
``_idx`` work on indices; the rest work on :class:`Element` objects.

Permutations compose left to right: ``p * q`` applies ``p`` first, so
``(p * q)[i] == q[p[i]]``.
"""

from __future__ import annotations

import itertools
import math
import random
import threading
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional, Sequence

from .cardinal import INFINITE, ExtendedNat

FULL_ASSOCIATIVITY_LIMIT = 64
SAMPLED_ASSOCIATIVITY_CHECKS = 20000


class GroupError(ValueError):
    pass


class ElementMismatchError(GroupError):
    pass


class NotASubgroupError(GroupError):
    pass


class NotNormalError(GroupError):
    pass


class InvalidTableError(GroupError):
    pass


@dataclass(frozen=True, eq=False)
class Element:
    group: "Group"
    index: int

    @property
    def payload(self):
        return self.group.payloads[self.index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.group is other.group and self.index == other.index

    def __hash__(self) -> int:
        return hash((id(self.group), self.index))

    def __mul__(self, other: "Element") -> "Element":
        return self.group.mul(self, other)

    def __invert__(self) -> "Element":
        return self.group.inv(self)

    def __pow__(self, n: int) -> "Element":
        return self.group.power(self, n)

    def __repr__(self) -> str:
        return f"{self.group.name}[{self.group.label(self.index)}]"


class Group:
    """A finite group given by its multiplication table.

    ``payloads[i]`` is the concrete value of element ``i``; ``kind`` and
    ``params`` record how the group was built so it can be serialized again.
    """

    def __init__(self, table: Sequence[Sequence[int]], payloads: Sequence[Hashable],
                 kind: str = "cayley", params: Optional[dict] = None,
                 name: Optional[str] = None, validate: bool = True,
                 labeler: Optional[Callable[[Hashable], str]] = None):
        self.table = [list(row) for row in table]
        self.payloads = list(payloads)
        self.kind = kind
        self.params = dict(params or {})
        self.name = name or kind
        self._labeler = labeler
        n = len(self.table)
        if len(self.payloads) != n:
            raise InvalidTableError("payload count does not match table size")
        if validate:
            _check_table(self.table)
        self.identity_idx = _find_identity(self.table)
        self.inverse = [row.index(self.identity_idx) for row in self.table]
        self._index_of = {p: i for i, p in enumerate(self.payloads)}
        if len(self._index_of) != n:
            raise InvalidTableError("payloads are not distinct")
        self._lock = threading.RLock()
        self._cache: dict = {}

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_multiplication(cls, payloads: Sequence[Hashable], mul: Callable,
                            kind: str, params: Optional[dict] = None,
                            name: Optional[str] = None, validate: bool = False,
                            labeler=None) -> "Group":
        index = {p: i for i, p in enumerate(payloads)}
        try:
            table = [[index[mul(a, b)] for b in payloads] for a in payloads]
        except KeyError as exc:
            raise InvalidTableError(f"product {exc.args[0]!r} leaves the element set") from None
        return cls(table, payloads, kind=kind, params=params, name=name,
                   validate=validate, labeler=labeler)

    def _cached(self, key, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    # -- basic protocol ---------------------------------------------------------

    def __len__(self) -> int:
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    @property
    def is_finite(self) -> bool:
        return True

    def __iter__(self):
        return iter(self.elements())

    def __repr__(self) -> str:
        return f"<Group {self.name} order={len(self)}>"

    def element(self, index: int) -> Element:
        if not 0 <= index < len(self):
            raise IndexError(f"element index {index} out of range for {self.name}")
        return Element(self, index)

    def elements(self) -> list[Element]:
        return [Element(self, i) for i in range(len(self))]

    def from_payload(self, payload) -> Element:
        try:
            return Element(self, self._index_of[payload])
        except KeyError:
            raise ElementMismatchError(f"{payload!r} is not an element of {self.name}") from None

    def index_of_payload(self, payload) -> int:
        return self.from_payload(payload).index

    @property
    def e(self) -> Element:
        return Element(self, self.identity_idx)

    def label(self, index: int) -> str:
        payload = self.payloads[index]
        if self._labeler is not None:
            return self._labeler(payload)
        return str(payload)

    def check(self, a: Element) -> int:
        if not isinstance(a, Element) or a.group is not self:
            raise ElementMismatchError(f"{a!r} does not belong to {self.name}")
        return a.index

    # -- index level ------------------------------------------------------------

    def mul_idx(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv_idx(self, i: int) -> int:
        return self.inverse[i]

    def pow_idx(self, i: int, n: int) -> int:
        if n < 0:
            i, n = self.inverse[i], -n
        result = self.identity_idx
        base = i
        while n:
            if n & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            n >>= 1
        return result

    def conj_idx(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def commutator_idx(self, g: int, h: int) -> int:
        """[g, h] = g h g^-1 h^-1"""
        t = self.table
        return t[t[t[g][h]][self.inverse[g]]][self.inverse[h]]

    def order_idx(self, i: int) -> int:
        n, x = 1, i
        while x != self.identity_idx:
            x = self.table[x][i]
            n += 1
        return n

    # -- element level ----------------------------------------------------------

    def mul(self, a: Element, b: Element) -> Element:
        return Element(self, self.table[self.check(a)][self.check(b)])

    def inv(self, a: Element) -> Element:
        return Element(self, self.inverse[self.check(a)])

    def power(self, a: Element, n: int) -> Element:
        return Element(self, self.pow_idx(self.check(a), n))

    def order_of(self, a: Element) -> ExtendedNat:
        return ExtendedNat(self.order_idx(self.check(a)))

    def socle(self, n: int) -> frozenset[Element]:
        if n < 1:
            raise ValueError("socle index must be positive")
        return frozenset(Element(self, i) for i in self.socle_idx(n))

    def socle_idx(self, n: int) -> frozenset[int]:
        return frozenset(i for i in range(len(self)) if self.pow_idx(i, n) == self.identity_idx)

    def exponent(self) -> int:
        return self._cached("exponent", lambda: math.lcm(*(self.order_idx(i) for i in range(len(self)))))

    def is_abelian(self) -> bool:
        def compute():
            t = self.table
            n = len(t)
            return all(t[i][j] == t[j][i] for i in range(n) for j in range(i + 1, n))
        return self._cached("abelian", compute)

    def centralizer_idx(self, g: int) -> frozenset[int]:
        def compute():
            t = self.table
            return frozenset(x for x in range(len(t)) if t[x][g] == t[g][x])
        return self._cached(("centralizer", g), compute)

    def center_idx(self) -> frozenset[int]:
        def compute():
            members = set(range(len(self)))
            for g in range(len(self)):
                members &= self.centralizer_idx(g)
            return frozenset(members)
        return self._cached("center", compute)

    def conjugacy_classes_idx(self) -> list[frozenset[int]]:
        def compute():
            seen: set[int] = set()
            classes = []
            for x in range(len(self)):
                if x in seen:
                    continue
                cls = frozenset(self.conj_idx(g, x) for g in range(len(self)))
                seen |= cls
                classes.append(cls)
            return classes
        return self._cached("classes", compute)

    def indices(self, elements: Iterable) -> frozenset[int]:
        """Accept Elements or plain indices; return an index set."""
        out = set()
        for a in elements:
            if isinstance(a, Element):
                out.add(self.check(a))
            elif isinstance(a, int) and 0 <= a < len(self):
                out.add(a)
            else:
                raise ElementMismatchError(f"{a!r} does not belong to {self.name}")
        return frozenset(out)

    def is_subgroup_idx(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        if self.identity_idx not in s:
            return False
        t = self.table
        return all(t[a][b] in s for a in s for b in s) and all(self.inverse[a] in s for a in s)

    def is_normal_idx(self, subset: Iterable[int]) -> bool:
        s = frozenset(subset)
        return all(self.conj_idx(g, x) in s for g in range(len(self)) for x in s)

    def generated_idx(self, generators: Iterable[int]) -> frozenset[int]:
        """Subgroup generated by ``generators`` (closure under right multiplication)."""
        gens = [g for g in set(generators)]
        members = {self.identity_idx}
        frontier = [self.identity_idx]
        t = self.table
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = t[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def subgroup_group(self, subset: Iterable[int], name: Optional[str] = None):
        """Materialize a subgroup as its own group.

        Returns ``(H, embedding)`` where ``embedding[h]`` is the index in this
        group of element ``h`` of ``H``.
        """
        members = sorted(frozenset(subset))
        if not self.is_subgroup_idx(members):
            raise NotASubgroupError(f"subset of {self.name} is not a subgroup")
        local = {g: k for k, g in enumerate(members)}
        table = [[local[self.table[a][b]] for b in members] for a in members]
        payloads = [self.payloads[g] for g in members]
        H = Group(table, payloads, kind="subgroup",
                  params={"parent": self.descriptor(), "elements": members},
                  name=name or f"subgroup of {self.name}", validate=False,
                  labeler=self._labeler)
        return H, members

    def descriptor(self) -> dict:
        if self.kind == "cayley" or (not self.params and self.kind != "quaternion8"):
            return {"kind": "cayley", "order": len(self), "table": self.table}
        return {"kind": self.kind, **self.params}


# -- table checks ---------------------------------------------------------------

def _find_identity(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    raise InvalidTableError("table has no two-sided identity")


def _check_table(table) -> None:
    n = len(table)
    if n == 0:
        raise InvalidTableError("empty table")
    full = set(range(n))
    for row in table:
        if len(row) != n or set(row) != full:
            raise InvalidTableError("table is not a Latin square over 0..n-1")
    for j in range(n):
        if {table[i][j] for i in range(n)} != full:
            raise InvalidTableError("table is not a Latin square over 0..n-1")
    _find_identity(table)
    if n <= FULL_ASSOCIATIVITY_LIMIT:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n))
                   for _ in range(SAMPLED_ASSOCIATIVITY_CHECKS))
    for a, b, c in triples:
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise InvalidTableError(f"associativity fails at ({a}, {b}, {c})")


# -- concrete families ------------------------------------------------------------

def cayley(table: Sequence[Sequence[int]], name: Optional[str] = None) -> Group:
    n = len(table)
    return Group(table, list(range(n)), kind="cayley", params={"order": n, "table": [list(r) for r in table]},
                 name=name or f"Cayley({n})", validate=True)


def cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    return Group.from_multiplication(list(range(n)), lambda a, b: (a + b) % n,
                                     kind="cyclic", params={"n": n}, name=f"C{n}")


def _dihedral_label(p) -> str:
    k, s = p
    rot = "e" if k == 0 else ("r" if k == 1 else f"r^{k}")
    if s == 0:
        return rot
    return "s" if k == 0 else f"{rot}s"


def dihedral(n: int) -> Group:
    """Symmetries of the regular n-gon, order 2n; payload (k, s) is r^k s^s."""
    if n < 1:
        raise GroupError("dihedral group needs n >= 1")
    payloads = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(a, b):
        (i, s), (j, t) = a, b
        return ((i + (-j if s else j)) % n, (s + t) % 2)

    return Group.from_multiplication(payloads, mul, kind="dihedral", params={"n": n},
                                     name=f"D{n}", labeler=_dihedral_label)


_Q8_UNITS = ("1", "i", "j", "k")
# product of basis units as (sign, unit)
_Q8_BASIS = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion8() -> Group:
    """Quaternion group; payloads are the strings '1', '-1', 'i', '-i', ..."""
    payloads = [sign + u for u in _Q8_UNITS for sign in ("", "-")]

    def split(p):
        return (-1, p[1:]) if p.startswith("-") else (1, p)

    def mul(a, b):
        sa, ua = split(a)
        sb, ub = split(b)
        s, u = _Q8_BASIS[(ua, ub)]
        return ("-" if sa * sb * s < 0 else "") + u

    return Group.from_multiplication(payloads, mul, kind="quaternion8", params={}, name="Q8")


def cycle_notation(perm: Sequence[int]) -> str:
    """1-based cycle notation, '()' for the identity."""
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            seen.add(start)
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append("(" + " ".join(str(c + 1) for c in cyc) + ")")
    return "".join(cycles) or "()"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse 1-based cycle notation like '(1 2)(3 4)' into an image tuple."""
    perm = list(range(degree))
    body = text.replace(",", " ").strip()
    if body in ("", "()", "e"):
        return tuple(perm)
    for chunk in body.split(")"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not chunk.startswith("("):
            raise GroupError(f"bad cycle syntax: {text!r}")
        pts = [int(tok) - 1 for tok in chunk[1:].split()]
        if any(not 0 <= p < degree for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle {chunk!r} for degree {degree}")
        # cycles are applied left to right as well
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        perm = [cyc[perm[i]] for i in range(degree)]
    return tuple(perm)


def compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Left-to-right product: apply p, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def permutation_group(degree: int, generators: Iterable[Sequence[int]],
                      name: Optional[str] = None, kind: str = "permutation",
                      params: Optional[dict] = None) -> Group:
    gens = [tuple(g) for g in generators]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"{g!r} is not a permutation of degree {degree}")
    identity = tuple(range(degree))
    members = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    payloads = sorted(members)
    if params is None:
        params = {"degree": degree, "generators": [list(g) for g in gens]}
    return Group.from_multiplication(payloads, compose, kind=kind, params=params,
                                     name=name or f"Perm({degree})", labeler=cycle_notation)


def _parity(p: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def symmetric(n: int) -> Group:
    payloads = sorted(itertools.permutations(range(n)))
    return Group.from_multiplication(payloads, compose, kind="symmetric", params={"n": n},
                                     name=f"S{n}", labeler=cycle_notation)


def alternating(n: int) -> Group:
    payloads = sorted(p for p in itertools.permutations(range(n)) if _parity(p) == 0)
    return Group.from_multiplication(payloads, compose, kind="alternating", params={"n": n},
                                     name=f"A{n}", labeler=cycle_notation)


def heisenberg_mod(m: int) -> Group:
    """Heisenberg group over Z/m: (a,b,c)(x,y,z) = (a+x, b+y, c+z+a*y)."""
    if m < 2:
        raise GroupError("modulus must be at least 2")
    payloads = list(itertools.product(range(m), repeat=3))

    def mul(u, v):
        a, b, c = u
        x, y, z = v
        return ((a + x) % m, (b + y) % m, (c + z + a * y) % m)

    return Group.from_multiplication(payloads, mul, kind="heisenberg_mod", params={"modulus": m},
                                     name=f"Heis({m})")


def direct_product(*factors: Group, name: Optional[str] = None) -> Group:
    if not factors:
        raise GroupError("direct product needs at least one factor")
    sizes = [len(f) for f in factors]
    tuples = list(itertools.product(*(range(s) for s in sizes)))
    position = {t: k for k, t in enumerate(tuples)}
    table = [[position[tuple(f.table[a][b] for f, a, b in zip(factors, u, v))] for v in tuples]
             for u in tuples]
    payloads = [tuple(f.payloads[i] for f, i in zip(factors, t)) for t in tuples]

    def labeler(p):
        return "(" + ", ".join(f.label(f.index_of_payload(x)) for f, x in zip(factors, p)) + ")"

    G = Group(table, payloads, kind="product",
              params={"factors": [f.descriptor() for f in factors]},
              name=name or " x ".join(f.name for f in factors), validate=False,
              labeler=labeler)
    G.factors = tuple(factors)
    return G


def quotient(G: Group, normal: Iterable) -> Group:
    """G/N as a Cayley-table group; ``result.projection[i]`` is the coset of element i."""
    N = G.indices(normal)
    if not G.is_subgroup_idx(N):
        raise NotASubgroupError(f"given subset is not a subgroup of {G.name}")
    if not G.is_normal_idx(N):
        raise NotNormalError(f"given subgroup is not normal in {G.name}")
    projection = [-1] * len(G)
    cosets = []
    for g in range(len(G)):
        if projection[g] >= 0:
            continue
        coset = sorted(G.table[g][n] for n in N)
        for x in coset:
            projection[x] = len(cosets)
        cosets.append(tuple(coset))
    reps = [c[0] for c in cosets]
    table = [[projection[G.table[a][b]] for b in reps] for a in reps]

    def labeler(coset):
        return "[" + G.label(coset[0]) + "]"

    Q = Group(table, cosets, kind="quotient",
              params={"parent": G.descriptor(), "normal": sorted(N)},
              name=f"{G.name}/N{len(N)}", validate=False, labeler=labeler)
    Q.parent = G
    Q.projection = projection
    return Q


# -- functional surface -------------------------------------------------------------

def multiply(G: Group, a: Element, b: Element) -> Element:
    return G.mul(a, b)


def power(G: Group, a: Element, n: int) -> Element:
    return G.power(a, n)


def order_of(G: Group, a: Element) -> ExtendedNat:
    return G.order_of(a)


def socle(G: Group, n: int) -> frozenset[Element]:
    return G.socle(n)


def exponent_of(G: Group) -> int:
    return G.exponent()


__all__ = [
    "Element", "Group", "GroupError", "ElementMismatchError", "NotASubgroupError",
    "NotNormalError", "InvalidTableError", "INFINITE", "ExtendedNat",
    "cayley", "cyclic", "dihedral", "quaternion8", "symmetric", "alternating",
    "permutation_group", "heisenberg_mod", "direct_product", "quotient",
    "compose", "cycle_notation", "parse_cycles",
    "multiply", "power", "order_of", "socle", "exponent_of",
]
