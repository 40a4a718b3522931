"""JSON group descriptors.

Finite groups (materialized as Cayley tables)::

    {"kind": "cyclic", "n": 6}
    {"kind": "dihedral", "n": 4}             order 2n
    {"kind": "quaternion8"}
    {"kind": "symmetric", "n": 4}
    {"kind": "alternating", "n": 4}
    {"kind": "permutation", "degree": 4, "generators": ["(1 2 3 4)", [1, 0, 2, 3]]}
    {"kind": "cayley", "table": [[0, 1], [1, 0]]}
    {"kind": "heisenberg_mod", "modulus": 3}
    {"kind": "corpus", "name": "S3"}          or the bare string "S3"
    {"kind": "product", "factors": [...]}
    {"kind": "quotient", "parent": {...}, "normal": [0, 3]}
    {"kind": "subgroup", "parent": {...}, "elements": [0, 3]}

Descriptors understood only by the classifier::

    {"kind": "abelian", "blocks": [{"kind": "cyclic", "m": 6, "mult": 1},
                                   {"kind": "prufer", "p": 2, "mult": "inf"}]}
    {"kind": "heisenberg", "ring": "Z"}      "Q", or {"mod": 3}
    {"kind": "heisenberg", "components": [2, 2, 2], "pairing": [[0, 0], [0, 1]]}
    {"kind": "free", "rank": 2}
    {"kind": "known", "name": "tarski_monster", "prime": 1009}
    {"kind": "product", "factors": [...]}     any mix of the above
    {"kind": "quotient", "base": {...}, "kernel_order": 2}

Permutation cycles are 1-based and multiply left to right.
"""

from __future__ import annotations

import json
import os
from typing import Any

from . import groups as g
from .abelian import AbelianDescriptor
from .classify import (AbelianD, FiniteD, FreeD, HeisenbergD, KnownGroup, ProductD,
                       QuotientD, UnknownGroupError)
from .corpus import CORPUS_NAMES, corpus_group
from .heisenberg import HeisenbergError, HeisenbergSpec


class DescriptorError(ValueError):
    pass


SYMBOLIC_KINDS = ("abelian", "heisenberg", "free", "known")


def load(text: str) -> Any:
    """Inline JSON, a path to a JSON file, or a bare corpus name."""
    stripped = text.strip()
    if stripped.startswith(("{", "[", '"')):
        try:
            return json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DescriptorError(f"malformed descriptor JSON: {exc}") from None
    if os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            try:
                return json.load(fh)
            except json.JSONDecodeError as exc:
                raise DescriptorError(f"malformed descriptor JSON in {text}: {exc}") from None
    return stripped


def _need(raw: dict, key: str, kind: type = int):
    if key not in raw:
        raise DescriptorError(f"{raw.get('kind')!r} descriptor needs {key!r}")
    value = raw[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise DescriptorError(f"{key!r} must be an integer, got {value!r}")
    if kind is list and not isinstance(value, list):
        raise DescriptorError(f"{key!r} must be a list, got {value!r}")
    return value


def _kind(raw) -> str:
    if isinstance(raw, str):
        return "corpus"
    if not isinstance(raw, dict) or not isinstance(raw.get("kind"), str):
        raise DescriptorError(f"descriptor must be an object with a string 'kind': {raw!r}")
    return raw["kind"]


def is_finite_descriptor(raw) -> bool:
    kind = _kind(raw)
    if kind in SYMBOLIC_KINDS:
        if kind == "heisenberg":
            try:
                return _heisenberg_spec(raw).is_finite
            except DescriptorError:
                return False
        return False
    if kind == "product":
        return all(is_finite_descriptor(f) for f in _need(raw, "factors", list))
    if kind == "quotient":
        return "parent" in raw
    return True


def parse_group(raw) -> g.Group:
    """Build a finite group; raises DescriptorError for anything else."""
    kind = _kind(raw)
    try:
        if kind == "corpus":
            name = raw if isinstance(raw, str) else _need(raw, "name", str)
            if name not in CORPUS_NAMES:
                raise DescriptorError(f"unknown corpus group {name!r}; known: {', '.join(CORPUS_NAMES)}")
            return corpus_group(name)
        if kind == "cyclic":
            return g.cyclic(_positive(raw, "n"))
        if kind == "dihedral":
            return g.dihedral(_positive(raw, "n", 3))
        if kind == "quaternion8":
            return g.quaternion8()
        if kind == "symmetric":
            return g.symmetric(_positive(raw, "n"))
        if kind == "alternating":
            return g.alternating(_positive(raw, "n"))
        if kind == "permutation":
            degree = _positive(raw, "degree")
            gens = [_permutation(x, degree) for x in _need(raw, "generators", list)]
            return g.permutation_group(degree, gens)
        if kind == "cayley":
            table = _need(raw, "table", list)
            if "order" in raw and raw["order"] != len(table):
                raise DescriptorError(f"order {raw['order']} does not match a table of {len(table)} rows")
            return g.cayley(table)
        if kind == "heisenberg_mod":
            return g.heisenberg_mod(_positive(raw, "modulus", 2))
        if kind == "heisenberg":
            spec = _heisenberg_spec(raw)
            if not spec.is_finite:
                raise DescriptorError("Heisenberg groups over Z or Q are infinite")
            return spec.to_group()
        if kind == "product":
            factors = _need(raw, "factors", list)
            if not factors:
                raise DescriptorError("product needs at least one factor")
            return g.direct_product(*(parse_group(f) for f in factors))
        if kind == "quotient":
            parent = parse_group(_need(raw, "parent", dict))
            return g.quotient(parent, _indices(raw, "normal", parent))
        if kind == "subgroup":
            parent = parse_group(_need(raw, "parent", dict))
            H, _ = parent.subgroup_group(_indices(raw, "elements", parent))
            return H
    except (g.GroupError, HeisenbergError) as exc:
        raise DescriptorError(str(exc)) from None
    if kind in SYMBOLIC_KINDS:
        raise DescriptorError(f"{kind!r} describes an infinite or symbolic group; a finite group is needed here")
    raise DescriptorError(f"unknown descriptor kind {kind!r}")


def parse_descriptor(raw):
    """Build a classification descriptor (see classify.GroupDescriptor)."""
    kind = _kind(raw)
    if is_finite_descriptor(raw) and kind != "heisenberg":
        return FiniteD(parse_group(raw))
    if kind == "abelian":
        try:
            return AbelianD(AbelianDescriptor.from_json(raw))
        except (KeyError, ValueError, TypeError) as exc:
            raise DescriptorError(f"bad abelian descriptor: {exc}") from None
    if kind == "heisenberg":
        return HeisenbergD(_heisenberg_spec(raw))
    if kind == "free":
        rank = _need(raw, "rank")
        if rank < 1:
            raise DescriptorError("free group rank must be at least 1")
        return FreeD(rank)
    if kind == "known":
        try:
            return KnownGroup(_need(raw, "name", str), raw.get("prime"))
        except (UnknownGroupError, ValueError) as exc:
            raise DescriptorError(str(exc).strip('"')) from None
    if kind == "product":
        factors = _need(raw, "factors", list)
        if not factors:
            raise DescriptorError("product needs at least one factor")
        return ProductD(parse_descriptor(f) for f in factors)
    if kind == "quotient":
        base = parse_descriptor(_need(raw, "base", dict))
        k = _need(raw, "kernel_order")
        if k < 1:
            raise DescriptorError("kernel_order must be positive")
        return QuotientD(base, k)
    raise DescriptorError(f"unknown descriptor kind {kind!r}")


def _positive(raw: dict, key: str, least: int = 1) -> int:
    v = _need(raw, key)
    if v < least:
        raise DescriptorError(f"{key!r} must be at least {least}, got {v}")
    return v


def _permutation(x, degree: int) -> tuple:
    if isinstance(x, str):
        return g.parse_cycles(x, degree)
    if isinstance(x, list) and all(isinstance(v, int) for v in x):
        return tuple(x)
    raise DescriptorError(f"bad permutation {x!r}")


def _indices(raw: dict, key: str, G: g.Group) -> list:
    idx = _need(raw, key, list)
    if any(not isinstance(i, int) or not 0 <= i < len(G) for i in idx):
        raise DescriptorError(f"{key!r} must list element indices below {len(G)}")
    return idx


def _heisenberg_spec(raw: dict) -> HeisenbergSpec:
    try:
        if "pairing" in raw:
            e, f, a = _need(raw, "components", list)
            return HeisenbergSpec.from_pairing(e, f, a, raw["pairing"])
        ring = raw.get("ring", "Z")
        if isinstance(ring, dict):
            ring = _need(ring, "mod")
        return HeisenbergSpec.over_ring(ring)
    except (HeisenbergError, ValueError, TypeError) as exc:
        raise DescriptorError(f"bad Heisenberg descriptor: {exc}") from None


def describe(d) -> dict:
    """Inverse of parse_descriptor, up to equivalent spellings."""
    if isinstance(d, FiniteD):
        return d.group.descriptor()
    if isinstance(d, AbelianD):
        return {"kind": "abelian", **d.descriptor.to_json()}
    if isinstance(d, HeisenbergD):
        return d.spec.descriptor()
    if isinstance(d, FreeD):
        return {"kind": "free", "rank": d.rank}
    if isinstance(d, KnownGroup):
        out = {"kind": "known", "name": d.name}
        if d.prime is not None:
            out["prime"] = d.prime
        return out
    if isinstance(d, ProductD):
        return {"kind": "product", "factors": [describe(f) for f in d.factors]}
    if isinstance(d, QuotientD):
        return {"kind": "quotient", "base": describe(d.base), "kernel_order": d.kernel_order}
    raise TypeError(f"not a group descriptor: {d!r}")
