"""One-variable words over a group: the free product G * <x>.

A :class:`Word` is stored in free-product normal form

    g0 x^n1 g1 x^n2 ... x^nk gk

with every ``n_i != 0`` and every inner coefficient ``g1 .. g(k-1)`` different
from the identity. The outer coefficients ``g0`` and ``gk`` may be trivial. The
constant word ``e`` is ``(g0,)`` with ``g0 = e``.

Literal syntax (used by the CLI): whitespace-separated tokens, each one of

    x        the variable
    x^N      a signed power of the variable
    gK       group element with index K
    gK^N     a signed power of that element
    e        the identity

e.g. ``"g3 x g5 x^-1"``.
"""

from __future__ import annotations

import re
from typing import Iterable, Sequence, Union

from .groups import Element, ElementMismatchError, Group

Term = Union[Element, int]


class WordSyntaxError(ValueError):
    pass


class Word:
    __slots__ = ("group", "parts")

    def __init__(self, group: Group, parts: Sequence[int]):
        # parts alternate coefficient index, exponent, coefficient index, ...
        self.group = group
        self.parts = tuple(parts)

    # -- construction -------------------------------------------------------------

    @classmethod
    def from_terms(cls, group: Group, terms: Iterable[Term]) -> "Word":
        return normalize(terms, group)

    @classmethod
    def constant(cls, g: Element) -> "Word":
        return cls(g.group, (g.index,))

    @classmethod
    def variable(cls, group: Group, n: int = 1) -> "Word":
        return normalize([n], group)

    # -- views ----------------------------------------------------------------------

    @property
    def coefficients(self) -> list[Element]:
        return [Element(self.group, i) for i in self.parts[0::2]]

    @property
    def exponents(self) -> list[int]:
        return list(self.parts[1::2])

    @property
    def degree(self) -> int:
        """Number of occurrences of x (counted with multiplicity |n_i|)."""
        return sum(abs(n) for n in self.parts[1::2])

    @property
    def is_constant(self) -> bool:
        return len(self.parts) == 1

    def letters(self) -> list[tuple[Element, int]]:
        """Expand into the alternating form g1 x^e1 g2 x^e2 ... with e_i = +-1.

        A trailing coefficient is returned as a final pair with exponent 0.
        """
        e = self.group.e
        out: list[tuple[Element, int]] = []
        coefs = self.parts[0::2]
        for k, n in enumerate(self.parts[1::2]):
            sign = 1 if n > 0 else -1
            out.append((Element(self.group, coefs[k]), sign))
            out.extend((e, sign) for _ in range(abs(n) - 1))
        if coefs[-1] != self.group.identity_idx or not out:
            out.append((Element(self.group, coefs[-1]), 0))
        return out

    def terms(self) -> list[Term]:
        out: list[Term] = []
        for k, p in enumerate(self.parts):
            out.append(Element(self.group, p) if k % 2 == 0 else p)
        return out

    # -- algebra --------------------------------------------------------------------

    def __mul__(self, other: Union["Word", Element]) -> "Word":
        if isinstance(other, Element):
            other = Word.constant(other)
        if other.group is not self.group:
            raise ElementMismatchError("words over different groups")
        return normalize(self.terms() + other.terms(), self.group)

    def __rmul__(self, other: Element) -> "Word":
        if isinstance(other, Element):
            return Word.constant(other) * self
        return NotImplemented

    def inverse(self) -> "Word":
        G = self.group
        out: list[Term] = []
        for k, p in enumerate(reversed(self.parts)):
            out.append(Element(G, G.inverse[p]) if k % 2 == 0 else -p)
        return normalize(out, G)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and other.group is self.group and other.parts == self.parts

    def __hash__(self) -> int:
        return hash((id(self.group), self.parts))

    def __call__(self, a: Element) -> Element:
        return evaluate(self, a)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r} over {self.group.name})"


def normalize(terms: Iterable[Term], group: Group) -> Word:
    """Reduce a raw term sequence (Elements and integer powers of x) to normal form."""
    G = group
    e = G.identity_idx
    out: list[int] = [e]
    for t in terms:
        if isinstance(t, Element):
            out[-1] = G.table[out[-1]][G.check(t)]
        elif isinstance(t, int) and not isinstance(t, bool):
            if t == 0:
                continue
            if out[-1] == e and len(out) > 1:
                # x^a e x^t merges into x^(a+t)
                out.pop()
                out[-1] += t
                if out[-1] == 0:
                    out.pop()
                else:
                    out.append(e)
            else:
                out.append(t)
                out.append(e)
        else:
            raise ElementMismatchError(f"term {t!r} is neither a group element nor a power of x")
    return Word(G, out)


def _power_tables(G: Group, exponents: Iterable[int]) -> dict[int, list[int]]:
    return {n: [G.pow_idx(a, n) for a in range(len(G))] for n in set(exponents)}


def evaluate_idx(w: Word, a: int, powers: dict[int, list[int]] | None = None) -> int:
    G = w.group
    t = G.table
    parts = w.parts
    acc = parts[0]
    for k in range(1, len(parts), 2):
        n = parts[k]
        xa = powers[n][a] if powers is not None else G.pow_idx(a, n)
        acc = t[t[acc][xa]][parts[k + 1]]
    return acc


def evaluate(w: Union[Word, Sequence[Term]], a: Element) -> Element:
    """Substitute ``a`` for x and multiply out.

    ``w`` may be a normalized :class:`Word` or a raw term sequence; raw
    sequences are multiplied out literally, without normalizing first.
    """
    if isinstance(w, Word):
        return Element(w.group, evaluate_idx(w, w.group.check(a)))
    G = a.group
    acc = G.identity_idx
    ai = G.check(a)
    for t in w:
        if isinstance(t, Element):
            acc = G.table[acc][G.check(t)]
        else:
            acc = G.table[acc][G.pow_idx(ai, t)]
    return Element(G, acc)


def word_map_idx(w: Word) -> list[int]:
    """The evaluation function of ``w`` as a list: position a holds f_w(a)."""
    G = w.group
    powers = _power_tables(G, w.parts[1::2])
    return [evaluate_idx(w, a, powers) for a in range(len(G))]


def fiber_idx(w: Word, target: int) -> frozenset[int]:
    return frozenset(a for a, v in enumerate(word_map_idx(w)) if v == target)


def elementary_set(G: Group, w: Word) -> frozenset[Element]:
    """E_w: all solutions of w(x) = e, by exhaustive evaluation."""
    _require_group(G, w)
    return frozenset(Element(G, a) for a in fiber_idx(w, G.identity_idx))


def fiber(G: Group, w: Word, t: Element) -> frozenset[Element]:
    """The preimage of ``t`` under the evaluation map of ``w``."""
    _require_group(G, w)
    return frozenset(Element(G, a) for a in fiber_idx(w, G.check(t)))


def _require_group(G: Group, w: Word) -> None:
    if w.group is not G:
        raise ElementMismatchError(f"word is over {w.group.name}, not {G.name}")


# -- standard words ---------------------------------------------------------------

def monomial(g: Element, n: int = 1) -> Word:
    """g x^n"""
    return normalize([g, n], g.group)


def commutator_word(g: Element) -> Word:
    """c_g = g x g^-1 x^-1; its solution set is the centralizer of g."""
    return normalize([g, 1, ~g, -1], g.group)


def conjugation_word(g: Element) -> Word:
    """w_g = x^-1 g x"""
    return normalize([-1, g, 1], g.group)


def embed(w: Word, target: Group, mapping: Sequence[int]) -> Word:
    """Push the coefficients of ``w`` through an injective homomorphism.

    ``mapping[i]`` is the target index of source element ``i``, for example the
    embedding returned by :meth:`Group.subgroup_group`.
    """
    src = w.group
    if len(mapping) != len(src):
        raise ElementMismatchError("embedding has the wrong length")
    for a in range(len(src)):
        for b in range(len(src)):
            if mapping[src.table[a][b]] != target.table[mapping[a]][mapping[b]]:
                raise ElementMismatchError("mapping is not a homomorphism")
    if len(set(mapping)) != len(mapping):
        raise ElementMismatchError("mapping is not injective")
    terms: list[Term] = []
    for k, p in enumerate(w.parts):
        terms.append(Element(target, mapping[p]) if k % 2 == 0 else p)
    return normalize(terms, target)


# -- literal syntax ---------------------------------------------------------------

_TOKEN = re.compile(r"^(?:(x)(?:\^(-?\d+))?|g(\d+)(?:\^(-?\d+))?|(e))$")


def parse_word(text: str, G: Group) -> Word:
    terms: list[Term] = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordSyntaxError(f"bad token {tok!r} in word {text!r}")
        var, var_pow, idx, idx_pow, ident = m.groups()
        if var:
            terms.append(int(var_pow) if var_pow is not None else 1)
        elif idx is not None:
            k = int(idx)
            if k >= len(G):
                raise WordSyntaxError(f"element index {k} out of range for {G.name} (order {len(G)})")
            terms.append(G.element(k) ** (int(idx_pow) if idx_pow is not None else 1))
        else:
            terms.append(G.e)
    return normalize(terms, G)


def format_word(w: Word) -> str:
    e = w.group.identity_idx
    toks = []
    for k, p in enumerate(w.parts):
        if k % 2 == 0:
            if p != e:
                toks.append(f"g{p}")
        else:
            toks.append("x" if p == 1 else f"x^{p}")
    return " ".join(toks) or "e"
