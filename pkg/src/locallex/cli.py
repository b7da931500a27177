"""Command-line driver: ``locallex {recognize,tokens,forest,oracle,check}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .earley import compute_chart, extract_ll
from .forest import build_forest, to_dot, to_json
from .lexing import format_path, path_sort_key
from .oracle import OracleConfig, ll_of, run_semantics
from .specfile import SpecError, load_spec

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_SPEC = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locallex", description="Local lexing workbench.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, caps=False):
        p.add_argument("spec", help="spec file, or the name of a bundled spec")
        p.add_argument("input", nargs="?", help="input characters (UTF-8)")
        p.add_argument("--stdin", action="store_true", help="read the input from stdin")
        if caps:
            p.add_argument("--max-eps", type=int, default=OracleConfig.max_epsilon_iterations,
                           help="max consecutive empty tokens per path")
            p.add_argument("--max-paths", type=int, default=OracleConfig.max_paths)
        return p

    p = common(sub.add_parser("recognize", help="print ACCEPT or REJECT"))
    p.add_argument("--dump-chart", action="store_true", help="print the item chart")
    common(sub.add_parser("tokens", help="token sequences via the Earley chart"), caps=True)
    common(sub.add_parser("oracle", help="token sequences via the reference semantics"), caps=True)
    common(sub.add_parser("check", help="compare Earley and reference semantics"), caps=True)
    p = common(sub.add_parser("forest", help="write the parse forest"), caps=False)
    p.add_argument("--dot", type=Path, help="DOT output file ('-' for stdout)")
    p.add_argument("--json", type=Path, help="JSON forest dump file ('-' for stdout)")
    return ap


def _write(target: Path, text: str, out):
    if str(target) == "-":
        out.write(text)
    else:
        target.write_text(text, encoding="utf-8")


def _print_paths(paths, truncated, out):
    for p in sorted(paths, key=path_sort_key):
        out.write(format_path(p) + "\n")
    if truncated:
        out.write("# TRUNCATED\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = _parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    if args.stdin:
        if args.input is not None:
            err.write("locallex: give the input either as an argument or with --stdin\n")
            return EXIT_USAGE
        D = sys.stdin.read()
        if D.endswith("\n"):
            D = D[:-1]
    elif args.input is None:
        err.write("locallex: missing input\n")
        return EXIT_USAGE
    else:
        D = args.input
    try:
        g, lx, sel = load_spec(args.spec)
    except FileNotFoundError as e:
        err.write(f"locallex: no such spec: {e}\n")
        return EXIT_SPEC
    except SpecError as e:
        err.write(f"locallex: {args.spec}: {e}\n")
        return EXIT_SPEC
    for pos, c in enumerate(D):
        if c not in lx.alphabet:
            out.write("OUTSIDE-ALPHABET\n")
            err.write(f"locallex: input character {c!r} at position {pos} is not in the alphabet\n")
            return EXIT_NO

    if args.command == "recognize":
        chart = compute_chart(g, lx, sel, D)
        if args.dump_chart:
            out.write(chart.dump())
        ok = chart.accepted()
        out.write("ACCEPT\n" if ok else "REJECT\n")
        return EXIT_OK if ok else EXIT_NO

    if args.command == "forest":
        if args.dot is None and args.json is None:
            err.write("locallex: forest needs --dot and/or --json\n")
            return EXIT_USAGE
        chart = compute_chart(g, lx, sel, D)
        if not chart.accepted():
            out.write("REJECT\n")
            return EXIT_NO
        f = build_forest(chart, g)
        if args.dot is not None:
            _write(args.dot, to_dot(f), out)
        if args.json is not None:
            _write(args.json, to_json(f), out)
        if f.cyclic:
            err.write("locallex: forest is cyclic (empty-token repetition)\n")
        return EXIT_OK

    try:
        caps = OracleConfig(args.max_eps, args.max_paths)
    except ValueError as e:
        err.write(f"locallex: {e}\n")
        return EXIT_USAGE

    if args.command == "tokens":
        ex = extract_ll(compute_chart(g, lx, sel, D), g, D, caps)
        _print_paths(ex.paths, ex.truncated, out)
        return EXIT_OK

    if args.command == "oracle":
        res = run_semantics(g, lx, sel, D, caps)
        _print_paths(ll_of(res, g, D), res.truncated, out)
        return EXIT_OK

    report = compare(g, lx, sel, D, caps)
    for line in report.lines:
        out.write(line + "\n")
    return EXIT_OK if report.agree else EXIT_NO


class Comparison:
    def __init__(self):
        self.lines: list[str] = []
        self.agree = True
        self.compared_sets = False

    def fail(self, msg):
        self.agree = False
        self.lines.append("DISAGREE " + msg)


def compare(g, lx, sel, D, caps: OracleConfig) -> Comparison:
    """Run both engines on ``D`` and compare acceptance and token sequences."""
    rep = Comparison()
    chart = compute_chart(g, lx, sel, D)
    ex = extract_ll(chart, g, D, caps)
    res = run_semantics(g, lx, sel, D, caps)
    ll = ll_of(res, g, D)
    accepted = chart.accepted()
    if not res.truncated:
        if accepted != bool(ll):
            rep.fail(f"acceptance: earley={accepted} oracle={bool(ll)}")
    elif ll and not accepted:
        rep.fail("acceptance: oracle found a sequence the recognizer rejected")
    if not res.truncated and not ex.truncated:
        rep.compared_sets = True
        if ex.paths != ll:
            rep.fail(f"sequences: earley-only={len(ex.paths - ll)} oracle-only={len(ll - ex.paths)}")
        if tuple(chart.tokens) != tuple(res.selected):
            rep.fail("selected token sets differ")
    else:
        rep.lines.append("# TRUNCATED: sequence sets not compared")
    if rep.agree:
        rep.lines.insert(0, f"AGREE {'ACCEPT' if accepted else 'REJECT'} {len(ex.paths)} sequence(s)")
    return rep


if __name__ == "__main__":
    sys.exit(main())
