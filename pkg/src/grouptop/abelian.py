"""Symbolic abelian groups: finite direct sums of Z, Z/m, Z(p^inf), Q and Q/Z.

Socle sizes, exponents and the almost-torsion-free test are computed from
closed forms per block. Finitely generated groups given by invariant factors
also support exact solving of ``n x = a``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cardinal import INFINITE, ExtendedNat, finite
from .report import YES, ClassReport, Finding, Verdict, record


class BlockKind(enum.Enum):
    FREE = "free"
    CYCLIC = "cyclic"
    PRUFER = "prufer"
    RATIONAL = "rational"
    QMODZ = "qmodz"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class Block:
    kind: BlockKind
    param: Optional[int] = None  # m for cyclic, p for prufer
    mult: ExtendedNat = finite(1)

    def __post_init__(self):
        if self.kind is BlockKind.CYCLIC and (self.param is None or self.param < 2):
            raise ValueError("cyclic block needs modulus m >= 2")
        if self.kind is BlockKind.PRUFER and (self.param is None or not is_prime(self.param)):
            raise ValueError(f"Prufer block needs a prime, got {self.param}")
        if self.kind in (BlockKind.FREE, BlockKind.RATIONAL, BlockKind.QMODZ) and self.param is not None:
            raise ValueError(f"{self.kind.value} block takes no parameter")
        if self.mult.is_finite and self.mult.value < 1:
            raise ValueError("block multiplicity must be at least 1")

    def socle_size(self, n: int) -> int:
        k = self.kind
        if k is BlockKind.CYCLIC:
            return math.gcd(n, self.param)
        if k is BlockKind.PRUFER:
            return self.param ** valuation(n, self.param)
        if k is BlockKind.QMODZ:
            return n
        return 1

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "mult": self.mult.to_json()}
        if self.kind is BlockKind.CYCLIC:
            out["m"] = self.param
        elif self.kind is BlockKind.PRUFER:
            out["p"] = self.param
        return out

    def __str__(self) -> str:
        base = {
            BlockKind.FREE: "Z", BlockKind.RATIONAL: "Q", BlockKind.QMODZ: "Q/Z",
            BlockKind.CYCLIC: f"Z/{self.param}", BlockKind.PRUFER: f"Z({self.param}^inf)",
        }[self.kind]
        if self.mult == 1:
            return base
        return f"{base}^({'w' if self.mult.is_infinite else self.mult.value})"


def free(mult=1) -> Block:
    return Block(BlockKind.FREE, None, _mult(mult))


def cyclic(m: int, mult=1) -> Block:
    return Block(BlockKind.CYCLIC, m, _mult(mult))


def prufer(p: int, mult=1) -> Block:
    return Block(BlockKind.PRUFER, p, _mult(mult))


def rational(mult=1) -> Block:
    return Block(BlockKind.RATIONAL, None, _mult(mult))


def qmodz(mult=1) -> Block:
    return Block(BlockKind.QMODZ, None, _mult(mult))


def _mult(m) -> ExtendedNat:
    if isinstance(m, ExtendedNat):
        return m
    return ExtendedNat.from_json(m)


@dataclass(frozen=True)
class AbelianDescriptor:
    blocks: tuple[Block, ...] = ()

    def __init__(self, blocks: Iterable[Block] = ()):
        object.__setattr__(self, "blocks", tuple(blocks))

    def __add__(self, other: "AbelianDescriptor") -> "AbelianDescriptor":
        return AbelianDescriptor(self.blocks + other.blocks)

    def __str__(self) -> str:
        return " + ".join(str(b) for b in self.blocks) or "0"

    @property
    def is_finite(self) -> bool:
        return all(b.kind is BlockKind.CYCLIC and b.mult.is_finite for b in self.blocks)

    @property
    def is_torsion(self) -> bool:
        return all(b.kind not in (BlockKind.FREE, BlockKind.RATIONAL) for b in self.blocks)

    @property
    def is_trivial(self) -> bool:
        return not self.blocks

    def order(self) -> ExtendedNat:
        if not self.is_finite:
            return INFINITE
        return finite(math.prod(b.param ** b.mult.value for b in self.blocks))

    def socle_cardinality(self, n: int) -> ExtendedNat:
        return socle_cardinality(self, n)

    def exponent(self) -> ExtendedNat:
        return exponent(self)

    def to_json(self) -> dict:
        return {"blocks": [b.to_json() for b in self.blocks]}

    @classmethod
    def from_json(cls, raw: dict) -> "AbelianDescriptor":
        blocks = []
        for item in raw.get("blocks", []):
            kind = BlockKind(item["kind"])
            mult = _mult(item.get("mult", 1))
            if kind is BlockKind.CYCLIC:
                blocks.append(Block(kind, int(item["m"]), mult))
            elif kind is BlockKind.PRUFER:
                blocks.append(Block(kind, int(item["p"]), mult))
            else:
                blocks.append(Block(kind, None, mult))
        return cls(blocks)


def socle_cardinality(D: AbelianDescriptor, n: int) -> ExtendedNat:
    """|D[n]|: product over blocks of (block socle size)^(multiplicity)."""
    if n < 1:
        raise ValueError("socle index must be positive")
    total = finite(1)
    for b in D.blocks:
        total = total * (finite(b.socle_size(n)) ** b.mult)
    return total


def exponent(D: AbelianDescriptor) -> ExtendedNat:
    if any(b.kind is not BlockKind.CYCLIC for b in D.blocks):
        return INFINITE
    return finite(math.lcm(*(b.param for b in D.blocks)) if D.blocks else 1)


def _candidate_primes(D: AbelianDescriptor) -> list[int]:
    primes = set()
    for b in D.blocks:
        if b.kind is BlockKind.CYCLIC:
            primes.update(prime_factors(b.param))
        elif b.kind is BlockKind.PRUFER:
            primes.add(b.param)
        elif b.kind is BlockKind.QMODZ:
            # every prime behaves alike on Q/Z
            primes.add(2)
    return sorted(primes)


def is_almost_torsion_free(D: AbelianDescriptor) -> bool:
    return all(socle_cardinality(D, p).is_finite for p in _candidate_primes(D))


def is_prime_exponent(D: AbelianDescriptor) -> bool:
    e = exponent(D)
    return e.is_finite and is_prime(e.value)


def classify_abelian(D: AbelianDescriptor, subject: Optional[str] = None) -> ClassReport:
    """Verdicts for an abelian group.

    The monomial and full Zariski topologies coincide on abelian groups, and
    either one is cofinite exactly when the group is almost torsion-free or has
    prime exponent. The centralizer topology of an abelian group is
    indiscrete, so the join with the cofinite topology is always cofinite.
    """
    atf = is_almost_torsion_free(D)
    pexp = is_prime_exponent(D)
    exp = exponent(D)
    cof = Verdict.of(atf or pexp)
    rule_cof = "abelian.atf_or_prime_exponent"
    cite_cof = ("abelian group: Zariski = monomial topology, cofinite iff "
                "almost torsion-free or of prime exponent")
    if D.is_finite:
        cite_cof = "finite group: every T1 topology on a finite set is discrete = cofinite"
        rule_cof = "finite.discrete"
    findings = {
        "is_finite": Finding(Verdict.of(D.is_finite), "abelian.blocks", "finite iff only cyclic blocks of finite multiplicity"),
        "is_abelian": Finding(YES, "abelian.given", "abelian descriptor"),
        "exponent": Finding(Verdict.of(exp.is_finite), "abelian.exponent",
                            "bounded iff only cyclic blocks; value is the lcm of moduli", value=exp.to_json()),
        "ATF": Finding(Verdict.of(atf), "abelian.socle_closed_form",
                       "almost torsion-free iff every prime socle G[p] is finite"),
        "WCL": Finding(Verdict.of(atf), "abelian.wcl_iff_atf",
                       "for abelian groups WCL is equivalent to almost torsion-free"),
        "prime_exponent": Finding(Verdict.of(pexp), "abelian.exponent", "exponent is a prime number"),
        "mon_cofinite": Finding(cof, rule_cof, cite_cof),
        "cen_cofinite": Finding(YES, "abelian.cen_cofinite",
                                "abelian group: centralizer topology is indiscrete, so C' is the cofinite topology"),
        "zar_cofinite": Finding(cof, rule_cof, cite_cof),
    }
    return record(ClassReport(subject or str(D), findings))


# -- finitely generated groups: invariant factors -----------------------------------

@dataclass(frozen=True)
class SolutionSet:
    status: str  # "empty" | "finite" | "coset"
    count: ExtendedNat = finite(0)
    witnesses: tuple = ()
    representative: Optional[tuple] = None

    @classmethod
    def empty(cls) -> "SolutionSet":
        return cls("empty", finite(0))

    @classmethod
    def of(cls, witnesses: Iterable) -> "SolutionSet":
        ws = tuple(sorted(set(witnesses)))
        if not ws:
            return cls.empty()
        return cls("finite", finite(len(ws)), ws, ws[0])

    @classmethod
    def coset(cls, representative, size: ExtendedNat) -> "SolutionSet":
        return cls("coset", size, (), representative)

    @property
    def is_empty(self) -> bool:
        return self.status == "empty"

    def __len__(self) -> int:
        if self.count.is_infinite:
            raise OverflowError("infinite solution set")
        return self.count.value

    def to_json(self) -> dict:
        out = {"status": self.status, "count": self.count.to_json()}
        if self.witnesses:
            out["witnesses"] = [list(w) if isinstance(w, tuple) else w for w in self.witnesses]
        if self.representative is not None and self.status == "coset":
            out["representative"] = list(self.representative)
        return out


@dataclass(frozen=True)
class FinitelyGeneratedAbelian:
    """Z/d1 + ... + Z/dk + Z^rank, elements as integer tuples (cyclic part first)."""

    invariants: tuple[int, ...] = ()
    rank: int = 0

    def __init__(self, invariants: Sequence[int] = (), rank: int = 0):
        inv = tuple(int(d) for d in invariants if int(d) != 1)
        if any(d < 1 for d in inv) or rank < 0:
            raise ValueError("invariant factors must be positive and rank non-negative")
        object.__setattr__(self, "invariants", inv)
        object.__setattr__(self, "rank", rank)

    @property
    def ngens(self) -> int:
        return len(self.invariants) + self.rank

    def order(self) -> ExtendedNat:
        return INFINITE if self.rank else finite(math.prod(self.invariants))

    def normalize(self, a: Sequence[int]) -> tuple[int, ...]:
        if len(a) != self.ngens:
            raise ValueError(f"element needs {self.ngens} coordinates, got {len(a)}")
        k = len(self.invariants)
        return tuple(x % d for x, d in zip(a[:k], self.invariants)) + tuple(a[k:])

    def elements(self):
        if self.rank:
            raise ValueError("cannot enumerate an infinite group")
        return itertools.product(*(range(d) for d in self.invariants))

    def descriptor(self) -> AbelianDescriptor:
        blocks = [cyclic(d) for d in self.invariants]
        if self.rank:
            blocks.append(free(self.rank))
        return AbelianDescriptor(blocks)


def solve_linear(G: FinitelyGeneratedAbelian, n: int, a: Sequence[int]) -> SolutionSet:
    """All x with n*x = a, componentwise.

    On Z/d the equation is solvable iff gcd(n, d) divides a_i, with gcd(n, d)
    solutions; on Z it needs n | a_i and has one solution (n != 0).
    """
    a = G.normalize(a)
    k = len(G.invariants)
    per_coord: list[list[int]] = []
    for ai, d in zip(a[:k], G.invariants):
        g = math.gcd(n, d)
        if ai % g:
            return SolutionSet.empty()
        step = d // g
        if step == 1:
            base = 0
        else:
            base = (ai // g) * pow((n // g) % step, -1, step) % step
        per_coord.append([base + j * step for j in range(g)])
    free_part = []
    for ai in a[k:]:
        if n == 0:
            if ai != 0:
                return SolutionSet.empty()
            free_part.append(0)
        else:
            if ai % n:
                return SolutionSet.empty()
            free_part.append(ai // n)
    if n == 0 and G.rank:
        rep = tuple(c[0] for c in per_coord) + tuple(free_part)
        return SolutionSet.coset(rep, INFINITE)
    return SolutionSet.of(tuple(c) + tuple(free_part) for c in itertools.product(*per_coord))


# -- Smith normal form ------------------------------------------------------------------

def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Diagonal Smith form of an integer matrix.

    Pivot rule: at each stage move the entry of smallest nonzero absolute value
    in the remaining block to the pivot position, clear its row and column by
    integer division, and repeat until the pivot divides everything left.
    """
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not nonzero:
                return A
            _, pi, pj = min(nonzero)
            A[t], A[pi] = A[pi], A[t]
            for row in A:
                row[t], row[pj] = row[pj], row[t]
            p = A[t][t]
            done = True
            for i in range(t + 1, rows):
                q = A[i][t] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, cols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if not done:
                continue
            bad = [(i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                continue
            if p < 0:
                A[t] = [-x for x in A[t]]
            break
    return A


def invariant_factors(relations: Sequence[Sequence[int]], ngens: int) -> FinitelyGeneratedAbelian:
    """Abelian group on ``ngens`` generators modulo the given relation rows."""
    rels = [list(r) for r in relations if any(r)]
    for r in rels:
        if len(r) != ngens:
            raise ValueError("relation rows must have one entry per generator")
    if not rels:
        return FinitelyGeneratedAbelian((), ngens)
    S = smith_normal_form(rels)
    diag = [abs(S[i][i]) for i in range(min(len(S), ngens))]
    nonzero = [d for d in diag if d]
    return FinitelyGeneratedAbelian([d for d in nonzero if d != 1], ngens - len(nonzero))
