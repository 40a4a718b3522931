"""Reduced words in a free group of finite rank.

Letters are ``(generator, sign)`` pairs. In literal syntax generator k is the
k-th lowercase letter and its inverse the matching capital: ``"a b A c"`` is
a b a^-1 c.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .abelian import SolutionSet

DEFAULT_MAX_RANK = 4


class FreeGroupError(ValueError):
    pass


Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if self.rank < 1:
            raise FreeGroupError("rank must be at least 1")
        for g, s in self.letters:
            if not 0 <= g < self.rank or s not in (1, -1):
                raise FreeGroupError(f"bad letter {(g, s)!r} for rank {self.rank}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @property
    def reduced(self) -> bool:
        return True

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return f_multiply(self, other)

    def __invert__(self) -> "FreeWord":
        return f_inverse(self)

    def __pow__(self, n: int) -> "FreeWord":
        base = self if n >= 0 else f_inverse(self)
        return FreeWord(self.rank, base.letters * abs(n))

    def __str__(self) -> str:
        return format_free_word(self)


def identity(rank: int) -> FreeWord:
    return FreeWord(rank, ())


def generator(rank: int, k: int) -> FreeWord:
    return FreeWord(rank, ((k, 1),))


def join_reduced(u: Sequence[Letter], v: Sequence[Letter]) -> tuple[Letter, ...]:
    """Product of two reduced letter tuples; cancellation only happens at the seam."""
    k, lu, lv = 0, len(u), len(v)
    while k < lu and k < lv and u[lu - 1 - k][0] == v[k][0] and u[lu - 1 - k][1] == -v[k][1]:
        k += 1
    return tuple(u[:lu - k]) + tuple(v[k:])


def f_multiply(u: FreeWord, v: FreeWord) -> FreeWord:
    if u.rank != v.rank:
        raise FreeGroupError(f"rank mismatch: {u.rank} vs {v.rank}")
    return FreeWord(u.rank, join_reduced(u.letters, v.letters))


def f_inverse(u: FreeWord) -> FreeWord:
    return FreeWord(u.rank, tuple((g, -s) for g, s in reversed(u.letters)))


def commutes(u: FreeWord, v: FreeWord) -> bool:
    return f_multiply(u, v) == f_multiply(v, u)


def cyclic_reduction(w: FreeWord) -> tuple[FreeWord, FreeWord]:
    """Split ``w = s * core * s^-1`` with ``core`` cyclically reduced."""
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return FreeWord(w.rank, letters[:i]), FreeWord(w.rank, letters[i:j + 1])


def primitive_root(w: FreeWord) -> tuple[FreeWord, int]:
    """``(u, k)`` with ``w = u^k``, k maximal and u not a proper power."""
    if w.is_identity:
        raise FreeGroupError("the identity has no primitive root")
    s, core = cyclic_reduction(w)
    n = len(core)
    c = core.letters
    for d in range(1, n + 1):
        if n % d == 0 and c[:d] * (n // d) == c:
            root = FreeWord(w.rank, s.letters + c[:d] + f_inverse(s).letters)
            return root, n // d
    raise AssertionError("unreachable: the full length is always a period")


def f_nth_root(w: FreeWord, n: int) -> SolutionSet:
    """The (at most one) u with u^n = w."""
    if n < 1:
        raise FreeGroupError("root exponent must be positive")
    if w.is_identity:
        return SolutionSet.of([w.letters])
    u, k = primitive_root(w)
    if k % n:
        return SolutionSet.empty()
    return SolutionSet.of([(u ** (k // n)).letters])


def nth_root_word(w: FreeWord, n: int):
    """Convenience: the root as a FreeWord, or None."""
    sol = f_nth_root(w, n)
    if sol.is_empty:
        return None
    return FreeWord(w.rank, sol.witnesses[0])


def f_centralizer_generator(w: FreeWord) -> FreeWord:
    """Generator of the (infinite cyclic) centralizer of a nontrivial ``w``."""
    return primitive_root(w)[0]


def same_cyclic_subgroup(u: FreeWord, v: FreeWord) -> bool:
    """Whether two nontrivial words have primitive roots equal up to inversion."""
    ru, rv = primitive_root(u)[0], primitive_root(v)[0]
    return ru == rv or ru == f_inverse(rv)


def reduced_words(rank: int, max_length: int) -> Iterator[FreeWord]:
    """Every reduced word of length <= max_length, shortest first."""
    layer: list[tuple[Letter, ...]] = [()]
    letters = [(g, s) for g in range(rank) for s in (1, -1)]
    yield FreeWord(rank, ())
    for _ in range(max_length):
        nxt = []
        for w in layer:
            for g, s in letters:
                if w and w[-1] == (g, -s):
                    continue
                nxt.append(w + ((g, s),))
        for w in nxt:
            yield FreeWord(rank, w)
        layer = nxt


def parse_free_word(text: str, rank: int = DEFAULT_MAX_RANK) -> FreeWord:
    letters = []
    for tok in text.replace("*", " ").split():
        base, _, power = tok.partition("^")
        if len(base) != 1 or base.lower() not in string.ascii_lowercase:
            raise FreeGroupError(f"bad letter {tok!r}")
        g = string.ascii_lowercase.index(base.lower())
        if g >= rank:
            raise FreeGroupError(f"letter {base!r} exceeds rank {rank}")
        s = -1 if base.isupper() else 1
        k = int(power) if power else 1
        if k < 0:
            s, k = -s, -k
        letters.extend([(g, s)] * k)
    return FreeWord(rank, tuple(letters))


def format_free_word(w: FreeWord) -> str:
    if w.is_identity:
        return "e"
    return " ".join(string.ascii_lowercase[g] if s > 0 else string.ascii_uppercase[g] for g, s in w.letters)
