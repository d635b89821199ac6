"""Command-line front end: ``build``, ``verify`` and ``tangle``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import ConstructionError
from .export import emit_json, emit_obj, emit_svg
from .lift import STAGES, build_stages
from .tangle import DomainError, TangleFraction, evaluate_conway, expand_fraction, pillow_trace
from .verify import format_table, run_verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ratlattice",
        description="Cubic-lattice embeddings of rational links with four z-sticks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct the lattice link for p/q")
    b.add_argument("p", type=int)
    b.add_argument("q", type=int)
    b.add_argument("--format", choices=("json", "obj", "svg"), default="json")
    b.add_argument("--out", type=Path, help="output file (default: standard output)")
    b.add_argument("--stage", choices=STAGES, default="final")

    v = sub.add_parser("verify", help="sweep all coprime pairs up to --max-p")
    v.add_argument("--max-p", type=int, default=30)
    v.add_argument("--jones-max-p", type=int, default=10)

    t = sub.add_parser("tangle", help="Conway word and pillowcase trace of p/q")
    t.add_argument("p", type=int)
    t.add_argument("q", type=int)
    return ap


def _error(msg: str) -> int:
    print(f"ratlattice: error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_build(args) -> int:
    try:
        TangleFraction(args.p, args.q)
        stages = build_stages(args.p, args.q)
    except DomainError as exc:
        return _error(str(exc))
    except ConstructionError as exc:
        print(f"ratlattice: construction failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    ll = stages[args.stage]
    if args.format == "json":
        text = emit_json(ll)
    elif args.format == "obj":
        text = emit_obj(ll)
    else:
        text = emit_svg(ll.circuit)
    census = ll.census()
    summary = (
        f"{args.p}/{args.q} {args.stage}: {ll.total} sticks "
        f"(x:{census['x']} y:{census['y']} z:{census['z']}), {len(ll.link.loops)} component(s)"
    )
    if args.out is None:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
        return EXIT_OK
    try:
        args.out.write_text(text)
    except OSError as exc:
        return _error(f"cannot write {args.out}: {exc}")
    print(summary)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.max_p < 2:
        return _error("--max-p must be at least 2")
    rows = run_verify(args.max_p, args.jones_max_p)
    sys.stdout.write(format_table(rows))
    failed = [r for r in rows if not r.passed]
    print(f"{len(rows)} pairs, {len(failed)} failed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_tangle(args) -> int:
    try:
        frac = TangleFraction(args.p, args.q)
        word = expand_fraction(frac)
    except DomainError as exc:
        return _error(str(exc))
    trace = pillow_trace(word)
    value = evaluate_conway(word)
    print(f"word: {word}")
    print("trace: " + " -> ".join(f"({f.t},{f.s})" for f in trace))
    print(f"value: {value}")
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    handler = {"build": cmd_build, "verify": cmd_verify, "tangle": cmd_tangle}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
