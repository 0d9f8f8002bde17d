"""Command-line surface.

Exit codes: 0 on success, 1 on domain errors (bad element text, out of
range indices, exceeded budgets), 2 on usage errors.  Every subcommand
emits human-readable text by default and stable JSON with --json.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ramified as rm
from .diagrams import (
    Diagram,
    brauer_normal_form,
    closure,
    generator,
    jones_generators,
    symmetric_generators,
)
from .errors import DomainError
from .presentations import canonical_assignment, catalog, verify_presentation, word_equal
from .ramified import Ramified, build_family, factor_balanced, factor_ramified_brauer
from .render import render
from .setpartitions import SetPartition, fitzgerald_decompose
from .store import CacheKey, generators_fingerprint, store_get, store_put
from .tiedjones import boxed_count, catalan_triangle, tj_normalize
from .words import format_word, parse_word

COUNT_FAMILIES = ["Pn", "LP", "DP", "Jones", "Brauer", "Sn", "RS", "RBr", "bBr", "tJ"]
CLOSURE_FAMILIES = ["Jones", "Brauer", "Sn", "RS", "RBr", "bBr", "tJ"]
PRESENTATIONS = ["Sn", "Jn", "Brn", "Pn", "DPn", "TSn", "Qn", "Wn", "tJn"]


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="tiedmonoids")
    top.add_argument("--json", action="store_true", help="emit JSON output")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="closed-form family sizes")
    p.add_argument("family", choices=COUNT_FAMILIES)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("closure", help="enumerate a family or a generator set")
    p.add_argument("family", nargs="?", choices=CLOSURE_FAMILIES)
    p.add_argument("--gens", help="generator tokens, e.g. 'L1 H2' or 's1 e1 f2'")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, default=None, help="element budget")
    p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("verify", help="check a presentation against its images")
    p.add_argument("presentation", choices=PRESENTATIONS)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("nf", help="normal forms and factorizations")
    p.add_argument("monoid", choices=["Pn", "Brauer", "RBr", "bBr", "tJ"])
    p.add_argument("--elem", required=True)
    p.add_argument("--n", type=int, default=None)

    p = sub.add_parser("product", help="multiply two elements")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("table", help="print a counting table")
    p.add_argument("which", choices=["bBr-sizes", "Bnj", "catalan", "U"])
    p.add_argument("--max", type=int, required=True)

    p = sub.add_parser("render", help="render an element")
    p.add_argument("--format", choices=["text", "svg"], default="text")
    p.add_argument("--kind", choices=["auto", "partition", "diagram", "ramified"],
                   default="auto")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("elem")

    p = sub.add_parser("word-eq", help="decide word equality in a tied family")
    p.add_argument("family", choices=["Qn", "Wn", "tJn", "TSn"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("left")
    p.add_argument("right")

    return top


def _emit(args, text_lines, payload) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _parse_element(text: str, kind: str, n: int | None):
    if kind == "auto":
        if ";" in text:
            kind = "ramified"
        elif "'" in text:
            kind = "diagram"
        else:
            kind = "partition"
    if kind == "ramified":
        return Ramified.from_text(text, n)
    if kind == "diagram":
        return Diagram.from_text(text, n)
    return SetPartition.from_text(text, n)


def _closure_generators(args):
    n = args.n
    if args.gens:
        gens = []
        for chunk in args.gens.replace(",", " ").split():
            if chunk[0] in "LHE":
                tok = parse_word(chunk.lower())  # reuse the token grammar
                (t,) = tok.tokens
                gens.append((chunk, generator(n, chunk[0], t.i, t.j)))
            else:
                (t,) = parse_word(chunk).tokens
                if t.name == "s":
                    gens.append((chunk, rm.ltilde(n, t.i)))
                elif t.name == "t":
                    gens.append((chunk, rm.htilde(n, t.i)))
                elif t.name == "e":
                    gens.append((chunk, rm.etilde(n, t.i, t.j)))
                elif t.name == "f":
                    gens.append((chunk, rm.ftilde(n, t.i)))
                else:
                    raise DomainError(f"unknown generator token {chunk!r}")
        first = gens[0][1]
        identity = rm.rid(n) if isinstance(first, Ramified) else Diagram.identity(n)
        return "custom", identity, gens
    if not args.family:
        raise DomainError("closure needs a family or --gens")
    family = args.family
    if family == "Jones":
        return family, Diagram.identity(n), list(jones_generators(n))
    if family == "Brauer":
        return (
            family,
            Diagram.identity(n),
            list(symmetric_generators(n)) + list(jones_generators(n)),
        )
    if family == "Sn":
        return family, Diagram.identity(n), list(symmetric_generators(n))
    mapped = {"RS": "RS", "RBr": "RBr", "bBr": "bBr", "tJ": "tJimage"}[family]
    return family, rm.rid(n), rm.family_generators(mapped, n)


def _cmd_count(args) -> int:
    size = rm.size_formula(args.family, args.n)
    _emit(args, [str(size)], {"family": args.family, "n": args.n, "size": size})
    return 0


def _cmd_closure(args) -> int:
    family, identity, gens = _closure_generators(args)
    key = CacheKey(family, args.n, generators_fingerprint(gens))
    table = None
    if not args.no_cache:
        table = store_get(key)
    cached = table is not None
    if table is None:
        table = closure(identity, gens, args.limit)
        if not args.no_cache:
            try:
                store_put(key, table, args.n)
            except OSError:
                pass  # cache directory not writable: stay silent, stay correct
    lines = [f"family={family} n={args.n} size={len(table)}"]
    lines += [e.to_text() for e in table]
    _emit(
        args,
        lines,
        {
            "family": family,
            "n": args.n,
            "size": len(table),
            "cached": cached,
            "elements": [e.to_text() for e in table],
        },
    )
    return 0


def _cmd_verify(args) -> int:
    pres = catalog(args.presentation, args.n)
    report = verify_presentation(pres, canonical_assignment(args.presentation, args.n))
    if args.json:
        print(report.to_json())
        return 0
    per_label: dict[str, list[bool]] = {}
    for check in report.checks:
        per_label.setdefault(check.label, []).append(check.ok)
    for label, oks in per_label.items():
        status = "pass" if all(oks) else "FAIL"
        print(f"{label}: {sum(oks)}/{len(oks)} {status}")
    print("ALL PASS" if report.all_ok else "FAILURES PRESENT")
    return 0


def _cmd_nf(args) -> int:
    if args.monoid == "Pn":
        p = SetPartition.from_text(args.elem, args.n)
        word = fitzgerald_decompose(p)
        text = " ".join(f"e{{{i},{j}}}" for i, j in word)
        _emit(args, [text or "1"], {"monoid": "Pn", "word": [[i, j] for i, j in word]})
        return 0
    if args.monoid == "Brauer":
        d = Diagram.from_text(args.elem, args.n)
        nf = brauer_normal_form(d)
        lines = [f"s={list(nf.s.images)}", f"k={nf.k}", f"s'={list(nf.s_prime.images)}"]
        _emit(
            args,
            lines,
            {
                "monoid": "Brauer",
                "s": list(nf.s.images),
                "k": nf.k,
                "s_prime": list(nf.s_prime.images),
            },
        )
        return 0
    if args.monoid == "RBr":
        a = Ramified.from_text(args.elem, args.n)
        word = factor_ramified_brauer(a)
        _emit(args, [format_word(word) or "1"], {"monoid": "RBr", "word": format_word(word)})
        return 0
    if args.monoid == "bBr":
        a = Ramified.from_text(args.elem, args.n)
        fact = factor_balanced(a)
        lines = [
            f"s: {format_word(fact.s_word) or '1'}",
            f"E: {format_word(fact.e_word) or '1'}",
            f"F: {format_word(fact.f_word) or '1'}",
            f"s': {format_word(fact.sp_word) or '1'}",
        ]
        _emit(
            args,
            lines,
            {
                "monoid": "bBr",
                "s": format_word(fact.s_word),
                "E": format_word(fact.e_word),
                "F": format_word(fact.f_word),
                "s_prime": format_word(fact.sp_word),
            },
        )
        return 0
    if args.monoid == "tJ":
        if args.n is None:
            raise DomainError("tJ normal form needs --n")
        nf = tj_normalize(parse_word(args.elem), args.n)
        _emit(args, [nf.to_text()], {"monoid": "tJ", "normal_form": nf.to_text()})
        return 0
    raise DomainError(f"unknown monoid {args.monoid!r}")


def _cmd_product(args) -> int:
    kind = "ramified" if (";" in args.left or ";" in args.right) else "diagram"
    left = _parse_element(args.left, kind, args.n)
    right = _parse_element(args.right, kind, args.n)
    result = left * right
    _emit(args, [result.to_text()], {"product": result.to_text()})
    return 0


def _cmd_table(args) -> int:
    rows = []
    if args.which == "bBr-sizes":
        for n in range(1, args.max + 1):
            rows.append((n, rm.size_formula("bBr", n)))
        lines = [f"{n} {v}" for n, v in rows]
        payload = {"table": "bBr-sizes", "rows": [[n, str(v)] for n, v in rows]}
    elif args.which == "Bnj":
        lines = ["n,j,B"]
        for n in range(1, args.max + 1):
            for j in range(1, n + 1):
                rows.append((n, j, boxed_count(n, j)))
        lines += [f"{n},{j},{v}" for n, j, v in rows]
        payload = {"table": "Bnj", "rows": [[n, j, str(v)] for n, j, v in rows]}
    elif args.which == "catalan":
        for n in range(0, args.max + 1):
            for k in range(0, n + 1):
                rows.append((n, k, catalan_triangle(n, k)))
        lines = [f"{n} {k} {v}" for n, k, v in rows]
        payload = {"table": "catalan", "rows": [[n, k, str(v)] for n, k, v in rows]}
    else:  # U
        for n in range(1, args.max + 1):
            for k in range(0, n // 2 + 1):
                rows.append((n, k, rm.two_balanced_count_exact(n, k)))
        lines = [f"{n} {k} {v}" for n, k, v in rows]
        payload = {"table": "U", "rows": [[n, k, str(v)] for n, k, v in rows]}
    _emit(args, lines, payload)
    return 0


def _cmd_render(args) -> int:
    elem = _parse_element(args.elem, args.kind, args.n)
    out = render(elem, args.format)
    _emit(args, [out], {"format": args.format, "rendered": out})
    return 0


def _cmd_word_eq(args) -> int:
    equal = word_equal(args.family, parse_word(args.left), parse_word(args.right), args.n)
    _emit(args, ["equal" if equal else "different"], {"equal": equal})
    return 0


_COMMANDS = {
    "count": _cmd_count,
    "closure": _cmd_closure,
    "verify": _cmd_verify,
    "nf": _cmd_nf,
    "product": _cmd_product,
    "table": _cmd_table,
    "render": _cmd_render,
    "word-eq": _cmd_word_eq,
}


def cli_dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
