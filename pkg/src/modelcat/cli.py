"""``modelcat`` command-line interface.

Exit codes:
    0  success
    1  validation failures found (``check``)
    2  input, usage or parse error
    3  internal limit exceeded (chain cap)
"""
from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence, TextIO

from .catalog import CatalogError, Mode, Severity, UnknownModelError, build_catalog, diff_models, natural_key
from .order import (
    DEFAULT_CHAIN_CAP,
    ChainExplosion,
    Comparison,
    CycleDetected,
    classify,
    compare,
    derive_relation,
    maximal_chains,
    most_complex,
    simplest,
)
from .parser import parse
from .report import AnalysisBundle, emit_chains_text, emit_dot, emit_report
from .validate import validate_all

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

CHAIN_CAP_ENV = "MODELCAT_CHAIN_CAP"


class _Exit(Exception):
    def __init__(self, code: int):
        self.code = code


class _Parser(argparse.ArgumentParser):
    def exit(self, status=0, message=None):
        if message:
            self._print_message(message, sys.stderr)
        raise _Exit(status)

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modelcat", description="Analyze catalogs of mathematical models ordered by complexity.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND", parser_class=_Parser)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.add_argument("file", metavar="FILE", help="catalog file (.mcat), or - for stdin")
        return p

    add("check", "parse the catalog and run every validation")
    add("order", "print the pairwise complexity matrix (sets mode)")
    add("classify", "print the ordering and extremal-object case")
    add("extremes", "print the most complex and simplest objects")
    p = add("chains", "list the maximal chains (totally ordered subcategories)")
    p.add_argument("--max", type=int, default=None, metavar="N", help=f"chain cap (default ${CHAIN_CAP_ENV} or {DEFAULT_CHAIN_CAP})")
    p = add("diagram", "emit the Hasse diagram as DOT")
    p.add_argument("-o", "--output", metavar="OUT.dot", help="write to this file instead of stdout")
    p.add_argument("--composites", action="store_true", help="also draw composite arrows, dashed")
    p = add("diff", "compare the assumption sets of two models (sets mode)")
    p.add_argument("model_a", metavar="MODEL_A")
    p.add_argument("model_b", metavar="MODEL_B")
    p = add("report", "write the JSON analysis report")
    p.add_argument("-o", "--output", metavar="OUT.json", help="write to this file instead of stdout")
    p.add_argument("--max", type=int, default=None, metavar="N", help="chain cap")
    return parser


def _load(path: str, stdin: TextIO, stderr: TextIO):
    try:
        if path == "-":
            text = stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        print(f"modelcat: error: cannot read {path}: {exc}", file=stderr)
        raise _Exit(EXIT_INPUT)
    name = "<stdin>" if path == "-" else path
    result = parse(text)
    for diag in result.diagnostics:
        print(diag.format(name), file=stderr)
    if result.errors:
        raise _Exit(EXIT_INPUT)
    try:
        return build_catalog(result.declarations)
    except CatalogError as exc:
        for diag in exc.errors:
            print(diag.format(name), file=stderr)
        raise _Exit(EXIT_INPUT)


def _poset(catalog, stderr):
    try:
        poset = derive_relation(catalog)
    except CycleDetected as exc:
        print(f"modelcat: error: {exc}", file=stderr)
        raise _Exit(EXIT_INPUT)
    for w in poset.warnings:
        print(f"warning {w.code}: {w.message}", file=stderr)
    return poset


def _chain_cap(flag: Optional[int], stderr) -> int:
    if flag is not None:
        return flag
    raw = os.environ.get(CHAIN_CAP_ENV)
    if raw is None:
        return DEFAULT_CHAIN_CAP
    try:
        return int(raw)
    except ValueError:
        print(f"modelcat: error: {CHAIN_CAP_ENV} must be an integer, got {raw!r}", file=stderr)
        raise _Exit(EXIT_INPUT)


def _chains(poset, cap, stderr):
    try:
        return maximal_chains(poset, cap)
    except ChainExplosion as exc:
        print(f"modelcat: error: {exc}", file=stderr)
        raise _Exit(EXIT_LIMIT)


def _require_sets(catalog, command, stderr):
    if catalog.mode is not Mode.SETS:
        print(f"modelcat: error: '{command}' compares assumption sets and needs a sets-mode catalog", file=stderr)
        raise _Exit(EXIT_INPUT)


def _write(text: str, output: Optional[str], stdout: TextIO, stderr: TextIO):
    if output is None:
        stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"modelcat: error: cannot write {output}: {exc}", file=stderr)
        raise _Exit(EXIT_INPUT)


_SHORT = {
    Comparison.HIGHER: "Higher",
    Comparison.LOWER: "Lower",
    Comparison.EQUAL: "Equal",
    Comparison.INCOMPARABLE: "Incomparable",
}


def _order_table(catalog) -> str:
    ids = list(catalog.model_ids)
    sets = {m.model_id: m.assumption_set for m in catalog.models}
    rows = [[""] + ids]
    for a in ids:
        rows.append([a] + [_SHORT[compare(sets[a], sets[b])] for b in ids])
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["# cell: complexity of the row model relative to the column model"]
    for r in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _fmt_ids(ids) -> str:
    return "{" + ", ".join(sorted(ids, key=natural_key)) + "}"


def run(argv: Sequence[str], stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None, stdin: Optional[TextIO] = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    saved = sys.stdout, sys.stderr
    # argparse prints help/usage through sys.stdout / sys.stderr
    sys.stdout, sys.stderr = stdout, stderr
    try:
        args = build_parser().parse_args(list(argv))
        return _dispatch(args, stdout, stderr, stdin)
    except _Exit as exc:
        return exc.code
    finally:
        sys.stdout, sys.stderr = saved


def _dispatch(args, stdout, stderr, stdin) -> int:
    catalog = _load(args.file, stdin, stderr)
    cmd = args.command

    if cmd == "diff":
        _require_sets(catalog, cmd, stderr)
        try:
            only_a, only_b, shared = diff_models(catalog, args.model_a, args.model_b)
        except UnknownModelError as exc:
            print(f"modelcat: error: unknown model {exc.args[0]!r}", file=stderr)
            return EXIT_INPUT
        stdout.write(
            f"only in {args.model_a}: {_fmt_ids(only_a)}\n"
            f"only in {args.model_b}: {_fmt_ids(only_b)}\n"
            f"shared: {_fmt_ids(shared)}\n"
        )
        return EXIT_OK

    if cmd == "order":
        _require_sets(catalog, cmd, stderr)
        _poset(catalog, stderr)
        stdout.write(_order_table(catalog))
        return EXIT_OK

    poset = _poset(catalog, stderr)

    if cmd == "check":
        reports = validate_all(catalog, poset)
        worst = EXIT_OK
        for report in reports:
            for check in report.checks:
                status = check.status.value.upper()
                if check.failed and check.severity is Severity.WARNING:
                    status = "WARN"
                line = f"{status:<4} {report.name}/{check.check_id}: {check.details}"
                if check.witnesses:
                    line += " [" + "; ".join(map(_fmt_witness, check.witnesses)) + "]"
                stdout.write(line + "\n")
            if not report.passed:
                worst = EXIT_VALIDATION
        return worst

    if cmd == "classify":
        c = classify(poset, catalog)
        stdout.write(
            f"{c.ordering.value}, case {c.prop1_case.value}, "
            f"most_complex={c.most_complex or 'none'}, simplest={c.simplest or 'none'}\n"
        )
        return EXIT_OK

    if cmd == "extremes":
        stdout.write(
            f"most_complex={most_complex(poset, catalog) or 'none'}\n"
            f"simplest={simplest(poset, catalog) or 'none'}\n"
        )
        return EXIT_OK

    if cmd == "chains":
        chains = _chains(poset, _chain_cap(args.max, stderr), stderr)
        stdout.write(emit_chains_text(chains))
        return EXIT_OK

    if cmd == "diagram":
        _write(emit_dot(catalog, poset, show_composites=args.composites), args.output, stdout, stderr)
        return EXIT_OK

    if cmd == "report":
        chains = _chains(poset, _chain_cap(args.max, stderr), stderr)
        bundle = AnalysisBundle(
            catalog=catalog,
            poset=poset,
            classification=classify(poset, catalog),
            chains=chains,
            validation=tuple(validate_all(catalog, poset)),
        )
        _write(emit_report(bundle), args.output, stdout, stderr)
        return EXIT_OK

    raise AssertionError(f"unhandled command {cmd!r}")


def _fmt_witness(w) -> str:
    if isinstance(w, (tuple, list)):
        return " ".join(_fmt_witness(x) if isinstance(x, (tuple, list)) else str(x) for x in w)
    return str(w)


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)
