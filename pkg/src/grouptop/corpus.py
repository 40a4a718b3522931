"""Pinned list of small finite groups used by every oracle and verification suite."""

from __future__ import annotations

from functools import lru_cache

from . import groups as g

_BUILDERS = {
    **{f"C{n}": (lambda n=n: g.cyclic(n)) for n in range(2, 13)},
    **{f"D{n}": (lambda n=n: g.dihedral(n)) for n in range(3, 7)},
    "Q8": g.quaternion8,
    "S3": lambda: g.symmetric(3),
    "S4": lambda: g.symmetric(4),
    "A4": lambda: g.alternating(4),
    "Heis3": lambda: g.heisenberg_mod(3),
    "C2xC2": lambda: g.direct_product(g.cyclic(2), g.cyclic(2)),
    "C2xC2xC2": lambda: g.direct_product(g.cyclic(2), g.cyclic(2), g.cyclic(2)),
    "C3xC3": lambda: g.direct_product(g.cyclic(3), g.cyclic(3)),
    "C2xC4": lambda: g.direct_product(g.cyclic(2), g.cyclic(4)),
    "C2xS3": lambda: g.direct_product(g.cyclic(2), g.symmetric(3)),
    "C2xQ8": lambda: g.direct_product(g.cyclic(2), g.quaternion8()),
    "C2xD4": lambda: g.direct_product(g.cyclic(2), g.dihedral(4)),
    "S3xC3": lambda: g.direct_product(g.symmetric(3), g.cyclic(3)),
    "C2xA4": lambda: g.direct_product(g.cyclic(2), g.alternating(4)),
    "S3xS3": lambda: g.direct_product(g.symmetric(3), g.symmetric(3)),
    "C2xS4": lambda: g.direct_product(g.cyclic(2), g.symmetric(4)),
}

CORPUS_NAMES: tuple[str, ...] = tuple(_BUILDERS)

# groups whose center is trivial
CENTER_FREE = frozenset({"S3", "S4", "A4", "D3", "D5", "S3xS3"})


@lru_cache(maxsize=None)
def corpus_group(name: str) -> g.Group:
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(f"unknown corpus group {name!r}; known: {', '.join(CORPUS_NAMES)}") from None
    G = builder()
    G.name = name
    return G


def corpus(max_order: int = 64) -> list[g.Group]:
    return [G for G in (corpus_group(n) for n in CORPUS_NAMES) if len(G) <= max_order]
