"""grouptop command line.

Exit codes: 0 success, 1 a verification suite failed, 2 bad input,
3 a size cap was exceeded, 4 unknown verification suite.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .abelian import FinitelyGeneratedAbelian, solve_linear
from .classify import (FiniteD, UnknownGroupError, VerificationError, classify,
                       oracle_check_finite)
from .corpus import CORPUS_NAMES, corpus_group
from .descriptors import DescriptorError, load, parse_descriptor, parse_group
from .free import FreeGroupError, FreeWord, f_nth_root, format_free_word, parse_free_word
from .groups import GroupError
from .heisenberg import HeisenbergError, HeisenbergSpec, h_solve_power
from .structure import DEFAULT_SUBGROUP_CAP, CapExceeded, structure_report
from .topology import (DEFAULT_CAP, SUBBASES, TopologyCapError, bitstring, comparison_dot,
                       hasse_dot, members, to_mask, topology)
from .verify import UnknownSuiteError, run
from .words import WordSyntaxError, fiber_idx, format_word, parse_word, word_map_idx

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP, EXIT_SUITE = 0, 1, 2, 3, 4

INPUT_ERRORS = (DescriptorError, WordSyntaxError, FreeGroupError, HeisenbergError, GroupError,
                UnknownGroupError, json.JSONDecodeError, ValueError)


class UsageError(ValueError):
    pass


def _dumps(obj) -> str:
    def default(x):
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, (set, frozenset)):
            return sorted(x)
        raise TypeError(f"cannot serialize {type(x).__name__}")
    return json.dumps(obj, indent=2, sort_keys=True, default=default)


def _groups(args) -> list:
    if args.corpus:
        return [corpus_group(n) for n in CORPUS_NAMES]
    if args.group is None:
        raise UsageError("give a group descriptor or --corpus")
    return [parse_group(load(args.group))]


def _subset(text: str, G) -> int:
    """Comma separated labels or element indices; labels win, and 'e' is the identity."""
    by_label = {G.label(i): i for i in range(len(G))}
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok in by_label:
            k = by_label[tok]
        elif tok == "e":
            k = G.identity_idx
        elif tok.lstrip("-").isdigit():
            k = int(tok)
        else:
            raise DescriptorError(f"no element labelled {tok!r} in {G.name}")
        if not 0 <= k < len(G):
            raise DescriptorError(f"element index {k} out of range for {G.name}")
        out.append(k)
    return to_mask(out)


def _labels(G, mask: int) -> str:
    return "{" + ", ".join(G.label(i) for i in members(mask)) + "}"


# -- subcommands -------------------------------------------------------------------------

def cmd_classify(args) -> int:
    if args.corpus:
        targets = [FiniteD(corpus_group(n)) for n in CORPUS_NAMES]
    elif args.group is None:
        raise UsageError("give a group descriptor or --corpus")
    else:
        targets = [parse_descriptor(load(args.group))]
    reports = []
    for d in targets:
        if args.oracle:
            if not isinstance(d, FiniteD):
                raise DescriptorError("--oracle needs a finite group")
            if len(d.group) > args.cap:
                raise CapExceeded(f"group of order {len(d.group)} exceeds cap {args.cap}")
            reports.append(oracle_check_finite(d, args.cap))
        else:
            reports.append(classify(d))
    if args.format == "json":
        payload = [r.to_json() for r in reports]
        print(_dumps(payload if args.corpus else payload[0]))
    elif args.format == "text":
        print("\n\n".join(r.render_text() for r in reports))
    else:
        raise UsageError("classify supports --format text or json")
    return EXIT_OK


def cmd_topology(args) -> int:
    out = []
    for G in _groups(args):
        if args.family == "lattice":
            if args.format == "dot":
                out.append(comparison_dot(G, args.cap).rstrip("\n"))
                continue
            from .topology import LATTICE_EDGES, compare, lattice_topologies
            tops = lattice_topologies(G, args.cap)
            summary = {name: {"discrete": f.is_discrete(), "T1": f.is_T1(),
                              "point_closures": [bitstring(c, f.n) for c in f.point_closures]}
                       for name, f in tops.items()}
            edges = [[lo, hi, compare(tops[lo], tops[hi])] for lo, hi in LATTICE_EDGES]
            if args.format == "json":
                out.append(_dumps({"group": G.name, "topologies": summary, "edges": edges}))
            else:
                lines = [f"group: {G.name}"]
                for name, f in tops.items():
                    tags = [t for t, on in (("discrete", f.is_discrete()), ("T1", f.is_T1())) if on]
                    lines.append(f"  {name:<9} {', '.join(tags) or '-'}")
                lines += [f"  {lo} {rel} {hi}" for lo, hi, rel in edges]
                out.append("\n".join(lines))
            continue
        fam = topology(G, args.family, args.cap)
        closure = None
        if args.closure is not None:
            subset = _subset(args.closure, G)
            closure = (subset, fam.closure(subset))
        if args.format == "dot":
            out.append(hasse_dot(fam, args.limit).rstrip("\n"))
        elif args.format == "json":
            data = fam.to_json(args.limit)
            if closure is not None:
                data["closure"] = {"of": members(closure[0]), "is": members(closure[1])}
            out.append(_dumps(data))
        else:
            lines = [f"group: {G.name}  family: {args.family}  points: {len(G)}",
                     f"  discrete: {'yes' if fam.is_discrete() else 'no'}  "
                     f"T1: {'yes' if fam.is_T1() else 'no'}  "
                     f"indiscrete: {'yes' if fam.is_indiscrete() else 'no'}"]
            lines.append("  point closures:")
            for i, c in enumerate(fam.point_closures):
                lines.append(f"    {G.label(i)}: {_labels(G, c)}")
            if closure is not None:
                lines.append(f"  closure of {_labels(G, closure[0])} = {_labels(G, closure[1])}")
            if args.list_sets:
                lines.append("  closed sets:")
                lines += [f"    {_labels(G, s)}" for s in fam.sets(args.limit)]
            out.append("\n".join(lines))
    print("\n\n".join(out))
    return EXIT_OK


def cmd_structure(args) -> int:
    reports = []
    for G in _groups(args):
        if len(G) > args.cap:
            raise CapExceeded(f"group of order {len(G)} exceeds cap {args.cap}")
        reports.append(structure_report(G, args.cap))
    if args.format == "json":
        print(_dumps(reports if args.corpus else reports[0]))
        return EXIT_OK
    blocks = []
    for rep in reports:
        labels = rep["labels"]

        def show(idx):
            return "{" + ", ".join(labels[i] for i in idx) + "}"

        lines = [f"group: {rep['group']}  order: {rep['order']}  exponent: {rep['exponent']}",
                 f"  abelian: {'yes' if rep['abelian'] else 'no'}  solvable: {'yes' if rep['solvable'] else 'no'}  "
                 f"nilpotency class: {rep['nilpotency_class'] if rep['nilpotency_class'] is not None else 'not nilpotent'}",
                 f"  center: {show(rep['center'])}",
                 "  upper central series: " + " <= ".join(show(s) for s in rep["upper_central_series"]),
                 "  derived series: " + " >= ".join(show(s) for s in rep["derived_series"])]
        if "engel_set" in rep:
            lines.append(f"  Engel set: {show(rep['engel_set'])}")
            lines.append(f"  Fitting subgroup: {show(rep['fitting_subgroup'])}")
        blocks.append("\n".join(lines))
    print("\n\n".join(blocks))
    return EXIT_OK


def cmd_solve(args) -> int:
    if args.kind == "word":
        G = parse_group(load(args.group))
        w = parse_word(args.word, G)
        if args.target is None:
            values = word_map_idx(w)
            data = {"group": G.name, "word": format_word(w),
                    "map": {G.label(x): G.label(v) for x, v in enumerate(values)}}
            text = [f"{format_word(w)} on {G.name}:"] + [f"  {G.label(x)} -> {G.label(v)}"
                                                        for x, v in enumerate(values)]
        else:
            t = _single(args.target, G)
            sols = sorted(fiber_idx(w, t))
            data = {"group": G.name, "word": format_word(w), "target": t, "solutions": sols,
                    "labels": [G.label(i) for i in sols]}
            text = [f"{format_word(w)} = {G.label(t)} in {G.name}: {len(sols)} solution(s)"] + \
                   [f"  {G.label(i)}" for i in sols]
    elif args.kind == "free":
        w = parse_free_word(args.word, args.rank)
        sol = f_nth_root(w, args.n)
        roots = [format_free_word(FreeWord(args.rank, s)) for s in sol.witnesses]
        data = {"word": format_free_word(w), "n": args.n, "roots": roots}
        text = [f"u^{args.n} = {format_free_word(w)}: " + (", ".join(f"u = {r}" for r in roots) or "no solution")]
    elif args.kind == "heisenberg":
        ring = args.ring
        spec = HeisenbergSpec.over_ring(int(ring) if ring.isdigit() else ring)
        target = tuple(Fraction(v) for v in args.target.split(","))
        if len(target) != 3:
            raise HeisenbergError("target must be three comma separated coordinates")
        if spec.moduli[0] == 0 or spec.is_finite:
            if any(v.denominator != 1 for v in target):
                raise HeisenbergError("target coordinates must be integers over this ring")
            target = tuple(int(v) for v in target)
        sol = h_solve_power(spec, args.n, target)
        data = {"ring": spec.ring_name, "n": args.n, "target": list(target), **sol.to_json()}
        text = [f"u^{args.n} = {_triple(target)} in H({spec.ring_name}): {sol.count} solution(s)"] + \
               [f"  u = {_triple(u)}" for u in sol.witnesses]
    else:
        invariants = [int(v) for v in args.invariants.split(",") if v.strip()]
        G = FinitelyGeneratedAbelian(invariants, args.rank)
        a = [int(v) for v in args.a.split(",") if v.strip()]
        sol = solve_linear(G, args.n, a)
        data = {"invariants": list(G.invariants), "rank": G.rank, "n": args.n, "a": a, **sol.to_json()}
        text = [f"{args.n} x = {tuple(a)}: {sol.status}, {sol.count} solution(s)"]
        if sol.status == "coset":
            text.append(f"  representative {tuple(sol.representative)}")
        text += [f"  x = {tuple(w)}" for w in sol.witnesses]
    print(_dumps(data) if args.format == "json" else "\n".join(text))
    return EXIT_OK


def _single(text: str, G) -> int:
    pts = members(_subset(text, G))
    if len(pts) != 1:
        raise DescriptorError("target must name exactly one element")
    return pts[0]


def _triple(u) -> str:
    return "(" + ", ".join(str(v) for v in u) + ")"


def cmd_verify(args) -> int:
    result = run(args.suite, jobs=args.jobs)
    if args.format == "json":
        print(_dumps(result.to_json(timings=args.timings)))
    else:
        for c in result.cases:
            t = f" ({c.seconds:.2f}s)" if args.timings else ""
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.suite}.{c.name}: {c.detail}{t}")
        for subject, v in result.violations:
            print(f"FAIL  consistency: {subject}: {v}")
        failed = sum(not c.passed for c in result.cases)
        print(f"{len(result.cases) - failed}/{len(result.cases)} cases passed, "
              f"{len(result.violations)} consistency violations")
    return EXIT_OK if result.passed else EXIT_FAILED


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def common_parser(cap: int) -> argparse.ArgumentParser:
        # one parent per default: argparse shares parent actions between subparsers
        parent = argparse.ArgumentParser(add_help=False)
        parent.add_argument("--format", choices=("text", "json", "dot"), default="text")
        parent.add_argument("--cap", type=int, default=cap,
                            help="largest group order for family generation and subgroup enumeration")
        return parent

    common = common_parser(DEFAULT_CAP)

    p = argparse.ArgumentParser(prog="grouptop",
                                description="Cofiniteness of word topologies on groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="verdicts for a group descriptor")
    c.add_argument("group", nargs="?", help="descriptor JSON, a JSON file, or a corpus name")
    c.add_argument("--corpus", action="store_true", help="classify every corpus group")
    c.add_argument("--oracle", action="store_true", help="recompute the families and compare (finite groups)")
    c.set_defaults(func=cmd_classify)

    t = sub.add_parser("topology", parents=[common], help="closed-set family on a finite group")
    t.add_argument("group", nargs="?")
    t.add_argument("--family", choices=tuple(SUBBASES) + ("lattice",), default="centralizer")
    t.add_argument("--closure", help="comma separated indices or labels whose closure to print")
    t.add_argument("--list-sets", action="store_true", help="list every closed set (text format)")
    t.add_argument("--limit", type=int, default=4096, help="most closed sets to materialize")
    t.add_argument("--corpus", action="store_true")
    t.set_defaults(func=cmd_topology)

    s = sub.add_parser("structure", parents=[common_parser(DEFAULT_SUBGROUP_CAP)], help="series, Engel set and Fitting subgroup")
    s.add_argument("group", nargs="?")
    s.add_argument("--corpus", action="store_true")
    s.set_defaults(func=cmd_structure)

    so = sub.add_parser("solve", help="word and root equations")
    kinds = so.add_subparsers(dest="kind", required=True)
    w = kinds.add_parser("word", parents=[common], help='one-variable word over a finite group, e.g. "g3 x g5 x^-1"')
    w.add_argument("group")
    w.add_argument("word")
    w.add_argument("--target", help="solve w(x) = target; without it the whole word map is printed")
    f = kinds.add_parser("free", parents=[common], help="u^n = w in a free group")
    f.add_argument("word", help='reduced word like "a b A c" (capital = inverse)')
    f.add_argument("n", type=int)
    f.add_argument("--rank", type=int, default=4)
    h = kinds.add_parser("heisenberg", parents=[common], help="u^n = target in H(Z), H(Q) or H(Z/m)")
    h.add_argument("ring", help="Z, Q or a modulus")
    h.add_argument("n", type=int)
    h.add_argument("target", help="a,b,c")
    li = kinds.add_parser("linear", parents=[common], help="n x = a in Z^r + Z/d1 + ...")
    li.add_argument("invariants", help="comma separated moduli (may be empty)")
    li.add_argument("n", type=int)
    li.add_argument("a", help="comma separated coordinates: free part first, then torsion")
    li.add_argument("--rank", type=int, default=0)
    so.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", nargs="?", default="all")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--timings", action="store_true", help="include wall-clock times (output no longer byte-stable)")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownSuiteError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_SUITE
    except (TopologyCapError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, *INPUT_ERRORS) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
