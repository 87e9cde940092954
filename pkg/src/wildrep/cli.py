"""Command line entry point.

    wildrep analyze FILE [--json PATH] [--dot-dir DIR] [--unmodified] [--verify-readings]
    wildrep painleve NAME|all [--json PATH] [--dot-dir DIR]
    wildrep realize FOREST.json

Exit codes: 0 ok, 2 parse error, 3 semantic error, 4 pipeline error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import NAMES, catalog
from .dsl import parse_class, print_class
from .errors import ParseError, SemanticError, WildrepError
from .fission import realize
from .report import Report, analyze, emit_dot, emit_json, forest_from_json


def _summary(r: Report) -> str:
    out = [f"{r.name}: k = {r.k}"]
    for p in r.tree.principal:
        out.append(f"  principal subtree at lambda = {p.lam}")
    out.append("  readings (rank, singularities):")
    for i, x in enumerate(r.readings):
        flag = ""
        if r.verified:
            flag = "  diagram ok" if r.verified[i] else "  DIAGRAM MISMATCH"
        out.append(f"    {x.label:<14} {x.rank:>3} {x.total_sings:>3}{flag}")
    out.append(f"  distinct forests: {r.distinct_forests}")
    out.append(f"  B = {[list(b) for b in r.diagram.B]}")
    if any(r.diagram.legs):
        out.append(f"  legs = {[list(l) for l in r.diagram.legs]}")
    out.append(f"  dimension = {r.dimension}")
    return "\n".join(out)


def _write_dots(r: Report, folder: str):
    d = Path(folder)
    d.mkdir(parents=True, exist_ok=True)
    for i, p in enumerate(r.tree.principal, 1):
        (d / f"{r.name}_principal_{i}.dot").write_bytes(emit_dot(p.tree, f"{r.name} principal {i}"))
    for i, x in enumerate(r.readings):
        (d / f"{r.name}_reading_{i}.dot").write_bytes(emit_dot(x.forest, f"{r.name} {x.label}"))
    (d / f"{r.name}_diagram.dot").write_bytes(emit_dot(r.diagram, f"{r.name} diagram"))


def _finish(reports: list, args, single: bool):
    for r in reports:
        print(_summary(r))
    if args.json:
        Path(args.json).write_bytes(emit_json(reports[0] if single else reports))
    if args.dot_dir:
        for r in reports:
            _write_dots(r, args.dot_dir)


def cmd_analyze(args) -> int:
    text = Path(args.file).read_text()
    G = parse_class(text)
    r = analyze(G, unmodified=args.unmodified, verify=args.verify_readings)
    _finish([r], args, True)
    return 0


def cmd_painleve(args) -> int:
    names = NAMES if args.name.lower() == "all" else (args.name,)
    try:
        reps = [analyze(catalog(n), verify=True) for n in names]
    except KeyError as e:
        raise SemanticError(str(e.args[0])) from None
    _finish(reps, args, len(names) == 1 and args.name.lower() != "all")
    return 0


def cmd_realize(args) -> int:
    try:
        doc = json.loads(Path(args.forest).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    try:
        F = forest_from_json(doc)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed forest document: {e}") from None
    sys.stdout.write(print_class(realize(F)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wildrep", description="Readings and diagrams of wild formal data on the sphere.")
    sub = ap.add_subparsers(dest="cmd", required=True)
    a = sub.add_parser("analyze", help="analyze a class written in the DSL")
    a.add_argument("file")
    a.add_argument("--json")
    a.add_argument("--dot-dir")
    a.add_argument("--unmodified", action="store_true", help="treat the input as unmodified formal data")
    a.add_argument("--verify-readings", action="store_true", help="realize every reading and compare diagrams")
    a.set_defaults(fn=cmd_analyze)
    p = sub.add_parser("painleve", help="built-in Painlevé catalog")
    p.add_argument("name", help=f"one of {', '.join(NAMES)} or 'all'")
    p.add_argument("--json")
    p.add_argument("--dot-dir")
    p.set_defaults(fn=cmd_painleve)
    r = sub.add_parser("realize", help="print a class realizing a forest document")
    r.add_argument("forest")
    r.set_defaults(fn=cmd_realize)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except WildrepError as e:
        print(f"wildrep: {type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"wildrep: {e}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
