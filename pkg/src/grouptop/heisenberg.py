"""Generalized Heisenberg groups H(E, F, A) with a bilinear form omega: E x F -> A.

Multiplication is ``(a,b,c)(x,y,z) = (a+x, b+y, c+z+omega(a,y))``. Iterating it
gives the closed form

    (a,b,c)^n = (n a, n b, n c + T(n) omega(a,b)),   T(n) = n(n-1)/2,

valid for every integer n. The coefficient is binomial(n, 2) and not the sum
0 + 1 + ... + n: already the square is (2a, 2b, 2c + omega(a,b)).

Supported components: the rings Z and Q with omega the ring product, Z/m with
omega the ring product, and finite cyclic components Z/e, Z/f, Z/k with an
explicit pairing table.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .abelian import SolutionSet
from .groups import Group
from .report import UNDECIDED, YES, Verdict

Scalar = Union[int, Fraction]
Triple = tuple


class HeisenbergError(ValueError):
    pass


@dataclass(frozen=True)
class HeisenbergSpec:
    """``moduli`` holds one entry per component: 0 for Z, None for Q, m >= 2 for Z/m."""

    moduli: tuple
    pairing: Optional[tuple] = None  # pairing[i][j] in Z/moduli[2], finite components only
    nondegenerate: bool = field(default=True, compare=False)

    @classmethod
    def over_ring(cls, ring: Union[str, int]) -> "HeisenbergSpec":
        if ring in ("Z", "ZZ", 0):
            m = 0
        elif ring in ("Q", "QQ", None):
            m = None
        elif isinstance(ring, int) and ring >= 2:
            m = ring
        else:
            raise HeisenbergError(f"unsupported ring {ring!r}")
        return cls((m, m, m))

    @classmethod
    def from_pairing(cls, e: int, f: int, a: int, table: Sequence[Sequence[int]]) -> "HeisenbergSpec":
        if min(e, f, a) < 2:
            raise HeisenbergError("pairing components must be finite cyclic of order >= 2")
        if len(table) != e or any(len(row) != f for row in table):
            raise HeisenbergError(f"pairing table must be {e} x {f}")
        tab = tuple(tuple(int(v) % a for v in row) for row in table)
        for x, x2 in itertools.product(range(e), repeat=2):
            for y in range(f):
                if tab[(x + x2) % e][y] != (tab[x][y] + tab[x2][y]) % a:
                    raise HeisenbergError("pairing is not additive in the first argument")
        for x in range(e):
            for y, y2 in itertools.product(range(f), repeat=2):
                if tab[x][(y + y2) % f] != (tab[x][y] + tab[x][y2]) % a:
                    raise HeisenbergError("pairing is not additive in the second argument")
        nondeg = (all(any(tab[x][y] for y in range(f)) for x in range(1, e))
                  and all(any(tab[x][y] for x in range(e)) for y in range(1, f)))
        return cls((e, f, a), tab, nondeg)

    # -- structure ---------------------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return all(isinstance(m, int) and m >= 2 for m in self.moduli)

    @property
    def ring_name(self) -> str:
        if self.pairing is not None:
            return "pairing(" + ",".join(f"Z/{m}" for m in self.moduli) + ")"
        m = self.moduli[0]
        return "Z" if m == 0 else "Q" if m is None else f"Z/{m}"

    def order(self) -> Optional[int]:
        return self.moduli[0] * self.moduli[1] * self.moduli[2] if self.is_finite else None

    def _red(self, k: int, v: Scalar) -> Scalar:
        m = self.moduli[k]
        if m is None:
            return Fraction(v)
        if m == 0:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise HeisenbergError(f"{v} is not an integer")
                v = v.numerator
            return int(v)
        return int(v) % m

    def element(self, a, b, c) -> Triple:
        return (self._red(0, a), self._red(1, b), self._red(2, c))

    def omega(self, a: Scalar, y: Scalar) -> Scalar:
        if self.pairing is not None:
            return self.pairing[a][y]
        return self._red(2, a * y)

    def identity(self) -> Triple:
        return self.element(0, 0, 0)

    def elements(self):
        if not self.is_finite:
            raise HeisenbergError("cannot enumerate an infinite Heisenberg group")
        return [tuple(t) for t in itertools.product(*(range(m) for m in self.moduli))]

    def descriptor(self) -> dict:
        if self.pairing is not None:
            return {"kind": "heisenberg", "components": list(self.moduli),
                    "pairing": [list(r) for r in self.pairing]}
        m = self.moduli[0]
        ring = "Z" if m == 0 else "Q" if m is None else {"mod": m}
        return {"kind": "heisenberg", "ring": ring}

    def to_group(self) -> Group:
        if not self.is_finite:
            raise HeisenbergError("only finite Heisenberg groups have a Cayley table")
        params = dict(self.descriptor())
        params.pop("kind")
        return Group.from_multiplication(self.elements(), lambda u, v: h_multiply(self, u, v),
                                         kind="heisenberg", params=params,
                                         name=f"H({self.ring_name})")


def _coerce(spec: HeisenbergSpec, u) -> Triple:
    if len(u) != 3:
        raise HeisenbergError(f"{u!r} is not a triple")
    return spec.element(*u)


def binomial2(n: int) -> int:
    """n(n-1)/2 for any integer n."""
    return n * (n - 1) // 2


def h_multiply(spec: HeisenbergSpec, u, v) -> Triple:
    a, b, c = _coerce(spec, u)
    x, y, z = _coerce(spec, v)
    return spec.element(a + x, b + y, c + z + spec.omega(a, y))


def h_inverse(spec: HeisenbergSpec, u) -> Triple:
    a, b, c = _coerce(spec, u)
    return spec.element(-a, -b, -c + spec.omega(a, b))


def h_power(spec: HeisenbergSpec, u, n: int) -> Triple:
    """Closed form (n a, n b, n c + T(n) omega(a, b))."""
    a, b, c = _coerce(spec, u)
    return spec.element(n * a, n * b, n * c + binomial2(n) * spec.omega(a, b))


def h_power_iterated(spec: HeisenbergSpec, u, n: int) -> Triple:
    """Reference power by repeated multiplication."""
    u = _coerce(spec, u)
    if n < 0:
        u, n = h_inverse(spec, u), -n
    acc = spec.identity()
    for _ in range(n):
        acc = h_multiply(spec, acc, u)
    return acc


def h_commutator(spec: HeisenbergSpec, u, v) -> Triple:
    """[u, v] = u v u^-1 v^-1"""
    uv = h_multiply(spec, u, v)
    return h_multiply(spec, h_multiply(spec, uv, h_inverse(spec, u)), h_inverse(spec, v))


def generators(spec: HeisenbergSpec) -> list[Triple]:
    return [spec.element(1, 0, 0), spec.element(0, 1, 0), spec.element(0, 0, 1)]


def is_central(spec: HeisenbergSpec, u) -> bool:
    """Commutes with the three unit generators.

    For Z and Z/m these generate the group; over Q the commutator's last
    coordinate omega(a, y) - omega(x, b) is linear in (x, y), so the units
    still decide centrality.
    """
    u = _coerce(spec, u)
    return all(h_multiply(spec, u, g) == h_multiply(spec, g, u) for g in generators(spec))


def h_solve_power(spec: HeisenbergSpec, n: int, target) -> SolutionSet:
    """All u with u^n = target."""
    if n < 1:
        raise HeisenbergError("root exponent must be positive")
    x, y, z = _coerce(spec, target)
    if spec.is_finite:
        return SolutionSet.of(u for u in spec.elements() if h_power(spec, u, n) == (x, y, z))
    if spec.moduli[0] is None:
        a, b = Fraction(x) / n, Fraction(y) / n
        c = (Fraction(z) - binomial2(n) * spec.omega(a, b)) / n
        return SolutionSet.of([(a, b, c)])
    if x % n or y % n:
        return SolutionSet.empty()
    a, b = x // n, y // n
    rest = z - binomial2(n) * spec.omega(a, b)
    if rest % n:
        return SolutionSet.empty()
    return SolutionSet.of([(a, b, rest // n)])


def wcl_by_central_extension(center_verdict: Verdict, quotient_verdict: Verdict) -> Verdict:
    """WCL for G from WCL of Z(G) and G/Z(G); the rule has no converse."""
    if center_verdict is YES and quotient_verdict is YES:
        return YES
    return UNDECIDED


def components_almost_torsion_free(spec: HeisenbergSpec) -> bool:
    # Z, Q and finite groups are all almost torsion-free
    return True
