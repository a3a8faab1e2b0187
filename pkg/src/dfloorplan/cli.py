"""Command-line interface: ``dfloorplan {count,convert,check,tree,equiv}``.

Exit codes: 0 success (or a positive verdict), 1 negative verdict,
2 parse error, 3 domain error, 4 resource limit.
"""
from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import bijection, dperm, geometry, gentree
from .errors import DomainError, ParseError, ResourceLimit

EXIT_OK, EXIT_NO, EXIT_PARSE, EXIT_DOMAIN, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _read(args) -> str:
    if getattr(args, "text", None) is not None:
        return args.text
    if args.input in (None, "-"):
        return sys.stdin.read()
    try:
        with open(args.input, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {args.input}: {exc}") from exc


@contextmanager
def _output(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _load_fp(path: str) -> geometry.Floorplan:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return geometry.from_json(text)


def cmd_count(args) -> int:
    with _output(args.output) as out:
        out.write("n,count\n")
        try:
            gentree.count_by_level(
                args.dim, args.max_n, workers=args.workers, max_frontier=args.max_frontier,
                checkpoint=args.checkpoint,
                on_level=lambda n, c: (out.write(f"{n},{c}\n"), out.flush()),
            )
        except ResourceLimit as exc:
            print(f"error: {exc}; last completed level {exc.last_level}", file=sys.stderr)
            return EXIT_RESOURCE
    return EXIT_OK


def cmd_convert(args) -> int:
    text = _read(args)
    if args.direction == "from-perm":
        fp = bijection.dperm_to_floorplan(dperm.DPermutation.parse(text))
        result = geometry.to_json(fp, indent=args.indent)
    else:
        result = bijection.phi(geometry.from_json(text)).format()
    with _output(args.output) as out:
        out.write(result + "\n")
    return EXIT_OK


def cmd_check(args) -> int:
    p = dperm.DPermutation.parse(_read(args))
    if args.cls == "f":
        witness = dperm.find_F_violation(p)
    elif args.cls == "baxter2d":
        pos = dperm.find_baxter_violation(p)
        witness = None if pos is None else "positions " + ",".join(str(i + 1) for i in pos)
    else:
        witness = None if dperm.is_separable(p) else "no separating split"
    with _output(args.output) as out:
        out.write("yes\n" if witness is None else f"no {witness}\n")
    return EXIT_OK if witness is None else EXIT_NO


def cmd_tree(args) -> int:
    nodes = gentree.label_tree(args.dim, args.max_n, max_nodes=args.max_nodes)
    with _output(args.output) as out:
        if args.format == "jsonl":
            for nid, level, par, lab in nodes:
                out.write(json.dumps({"id": nid, "n": level, "parent": par, "label": str(lab)}) + "\n")
        else:
            out.write("digraph tree {\n")
            for nid, _, par, lab in nodes:
                out.write(f'  {nid} [label="{lab}"];\n')
                if par is not None:
                    out.write(f"  {par} -> {nid};\n")
            out.write("}\n")
    return EXIT_OK


def cmd_equiv(args) -> int:
    same = geometry.equivalent(_load_fp(args.a), _load_fp(args.b))
    with _output(args.output) as out:
        out.write("equivalent\n" if same else "not equivalent\n")
    return EXIT_OK if same else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="dfloorplan", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count floorplans level by level (CSV)")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--checkpoint", help="frontier file, saved per level and resumed from")
    p.add_argument("--max-frontier", type=int, help="cap on distinct labels per level")
    p.add_argument("--format", choices=["csv"], default="csv")
    p.add_argument("--output")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("convert", help="floorplan JSON <-> d-permutation text")
    p.add_argument("direction", choices=["to-perm", "from-perm"])
    p.add_argument("text", nargs="?", help="inline input (default: --input or stdin)")
    p.add_argument("--input")
    p.add_argument("--output")
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--indent", type=int, default=None)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", help="class membership of a d-permutation")
    p.add_argument("cls", choices=["f", "separable", "baxter2d"])
    p.add_argument("text", nargs="?")
    p.add_argument("--input")
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("tree", help="materialize the label tree")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--format", choices=["dot", "jsonl"], default="jsonl")
    p.add_argument("--max-nodes", type=int, default=100_000)
    p.add_argument("--output")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("equiv", help="weak equivalence of two floorplan JSON files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--output")
    p.set_defaults(func=cmd_equiv)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("workers", "max_n", "dim"):
        if getattr(args, name, 1) is not None and getattr(args, name, 1) < 1:
            print(f"error: --{name.replace('_', '-')} must be at least 1", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
