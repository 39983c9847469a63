"""``msd`` command line: enumeration, table verification and per-record tools.

Exit codes: 0 success, 1 table/oracle mismatch or resource exhaustion,
2 usage error or malformed input, 3 non-minimal input to ``reduce``,
4 polynomial coefficient overflow.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from contextlib import contextmanager
from typing import Iterator, Sequence, TextIO

from . import tables
from .core import (
    cyclomatic_number,
    is_minimal_strong,
    is_strongly_connected,
    linear_vertices,
    transitive_arcs,
)
from .digraph6 import Digraph6Error, arc_count, encode, read_records, write_records
from .gen import ORACLE_MAX_ORDER, Catalog, brute_force_msd_count, enumerate_to
from .spectral import CoefficientOverflow, char_poly, isospectral_classes
from .xform import reduction_sequence

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NOT_MSC = 3
EXIT_OVERFLOW = 4

SCRATCH_ENV = "MSD_SCRATCH"

log = logging.getLogger("msdigraph")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@contextmanager
def _output(path: str | None) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            yield fh


def _scratch(args: argparse.Namespace) -> str | None:
    return args.scratch or os.environ.get(SCRATCH_ENV) or None


def _catalogs(args: argparse.Namespace, n_max: int) -> list[Catalog]:
    try:
        return enumerate_to(n_max, jobs=args.jobs, scratch=_scratch(args), budget=args.budget)
    except MemoryError as exc:
        raise CliError(str(exc), EXIT_MISMATCH) from exc


def count_line(counts: dict[int, int]) -> str:
    cells = " ".join(f"m={m}:{c}" for m, c in sorted(counts.items()))
    return f"{cells} total={sum(counts.values())}".strip()


def cmd_enum(args: argparse.Namespace) -> int:
    if args.order < 1:
        raise CliError("--order must be >= 1", EXIT_USAGE)
    catalog = _catalogs(args, args.order)[-1]
    entries = catalog.entries
    with _output(args.out) as fh:
        if args.format == "count":
            if args.arcs is not None:
                fh.write(f"{catalog.counts.get(args.arcs, 0)}\n")
            else:
                fh.write(count_line(catalog.counts) + "\n")
        else:
            if args.arcs is not None:
                entries = [e for e in entries if arc_count(e) == args.arcs]
            write_records(fh, entries)
    return EXIT_OK


def _load_fixture(path: str | None) -> dict:
    """Reference overrides keyed by order; orders absent from the file keep the embedded rows."""
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    fixed: dict = {}
    for key, value in raw.items():
        if key == "cells":
            fixed[key] = {int(n): {int(m): int(c) for m, c in row.items()} for n, row in value.items()}
        else:
            fixed[key] = {int(n): int(c) for n, c in value.items()}
    return fixed


def _ref(fixture: dict, key: str, embedded: dict) -> dict:
    return {**embedded, **fixture.get(key, {})}


def _diff_rows(
    label: str, expected: dict[int, int], got: dict[int, int], n: int, out: TextIO
) -> list[str]:
    bad = []
    for m in sorted(set(expected) | set(got)):
        e, g = expected.get(m, 0), got.get(m, 0)
        if e != g:
            msg = f"{label} cell (n={n}, m={m}): expected {e}, got {g}"
            out.write(f"  DIFF {msg}\n")
            bad.append(msg)
    return bad


def _diff_value(label: str, expected: int | None, got: int, n: int, out: TextIO) -> list[str]:
    if expected is None or expected == got:
        return []
    msg = f"{label} (n={n}): expected {expected}, got {got}"
    out.write(f"  DIFF {msg}\n")
    return [msg]


def cmd_verify(args: argparse.Namespace) -> int:
    if not tables.MIN_ORDER <= args.max_order <= tables.MAX_ORDER:
        raise CliError(
            f"--max-order must lie in {tables.MIN_ORDER}..{tables.MAX_ORDER}", EXIT_USAGE
        )
    fixture = _load_fixture(args.fixture)
    out = sys.stdout
    mismatches: list[str] = []
    catalogs = _catalogs(args, args.max_order)
    for cat in catalogs[1:]:
        n = cat.order
        if args.table == 1:
            cells = _ref(fixture, "cells", tables.UNLABELED_COUNTS).get(n, {})
            totals = _ref(fixture, "totals", tables.UNLABELED_TOTALS)
            bad = _diff_rows("table 1", cells, cat.counts, n, out)
            bad += _diff_value("table 1 UMS", totals.get(n), cat.total, n, out)
            out.write(f"n={n} {'OK' if not bad else 'FAIL'} total={cat.total}\n")
        else:
            report = isospectral_classes(cat)
            cells = _ref(fixture, "cells", tables.ISOSPECTRAL_COUNTS).get(n, {})
            bad = _diff_rows("table 2", cells, report.per_arc_counts, n, out)
            bad += _diff_value("table 2 sum", _ref(fixture, "sums", tables.ISOSPECTRAL_SUMS).get(n), report.per_arc_sum, n, out)
            bad += _diff_value("table 2 total", _ref(fixture, "totals", tables.ISOSPECTRAL_TOTALS).get(n), report.total, n, out)
            bad += _diff_value("table 2 delta", _ref(fixture, "deltas", tables.ISOSPECTRAL_DELTAS).get(n), report.delta, n, out)
            status = "OK" if not bad else "FAIL"
            out.write(
                f"n={n} {status} sum={report.per_arc_sum} total={report.total} delta={report.delta}\n"
            )
        mismatches += bad
    if mismatches:
        print(f"first mismatch: {mismatches[0]}", file=sys.stderr)
        return EXIT_MISMATCH
    out.write(f"table {args.table} OK through order {args.max_order}\n")
    return EXIT_OK


def _records(path: str) -> list:
    try:
        with open(path, encoding="ascii") as fh:
            return list(read_records(fh))
    except (Digraph6Error, UnicodeDecodeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_USAGE) from exc


def describe(d) -> str:
    strong = is_strongly_connected(d)
    minimal = strong and is_minimal_strong(d)
    lin = sorted(linear_vertices(d))
    parts = [
        "strong" if strong else "non-strong",
        "minimal" if minimal else "non-minimal",
        f"linear={len(lin)}",
        f"m={d.size}",
        f"cyclomatic={cyclomatic_number(d) if strong else '-'}",
        "vertices=[" + ",".join(map(str, lin)) + "]",
    ]
    trans = transitive_arcs(d)
    if trans:
        parts.append("transitive=[" + ", ".join(f"{u}→{w}" for u, w in trans) + "]")
    return " ".join(parts)


def cmd_check(args: argparse.Namespace) -> int:
    for _, d in _records(args.file):
        print(f"{encode(d).decode()} {describe(d)}")
    return EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    records = _records(args.file)
    for lineno, d in records:
        if d.order < 2 or not is_minimal_strong(d):
            raise CliError(f"line {lineno}: not a minimal strong digraph of order >= 2", EXIT_NOT_MSC)
    for _, d in records:
        print(f"{encode(d).decode()} steps={d.order - 2}")
        for reduced, step in reduction_sequence(d):
            line = f"  {step}"
            if args.trace:
                line += f" -> {encode(reduced).decode()}"
            print(line)
    return EXIT_OK


def cmd_charpoly(args: argparse.Namespace) -> int:
    try:
        for _, d in _records(args.file):
            print(char_poly(d).csv())
    except CoefficientOverflow as exc:
        raise CliError(str(exc), EXIT_OVERFLOW) from exc
    return EXIT_OK


def cmd_isospectral(args: argparse.Namespace) -> int:
    if args.order < 1:
        raise CliError("--order must be >= 1", EXIT_USAGE)
    catalog = _catalogs(args, args.order)[-1]
    try:
        report = isospectral_classes(catalog)
    except CoefficientOverflow as exc:
        raise CliError(str(exc), EXIT_OVERFLOW) from exc
    with _output(args.out) as fh:
        for line in report.lines():
            fh.write(line + "\n")
    summary = (
        f"order={report.order} classes={report.total} sum={report.per_arc_sum} delta={report.delta}"
    )
    print(summary, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    if not 2 <= args.order <= ORACLE_MAX_ORDER:
        raise CliError(f"--order must lie in 2..{ORACLE_MAX_ORDER}", EXIT_USAGE)
    brute = brute_force_msd_count(args.order)
    enum = _catalogs(args, args.order)[-1].counts
    ok = brute == enum
    print(f"brute {count_line(brute)}")
    print(f"enum  {count_line(enum)}")
    print(f"brute={sum(brute.values())} enum={sum(enum.values())} {'OK' if ok else 'MISMATCH'}")
    return EXIT_OK if ok else EXIT_MISMATCH


def _add_gen_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--jobs", type=int, default=1, help="worker processes for expansion")
    p.add_argument("--scratch", help=f"directory for spill files (default ${SCRATCH_ENV} or system temp)")
    p.add_argument("--budget", type=int, default=4_000_000, help="in-memory entries before spilling")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msd", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enum", help="enumerate unlabeled MSC digraphs of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--arcs", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("d6", "count"), default="d6")
    _add_gen_options(p)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("verify", help="recompute a reference table and diff it")
    p.add_argument("--table", type=int, choices=(1, 2), required=True)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--fixture", help="JSON file overriding the embedded reference values")
    _add_gen_options(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check", help="report strong/minimal structure per record")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="print reductions down to C_2")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="also print each intermediate record")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("charpoly", help="characteristic polynomial per record (c_n..c_0)")
    p.add_argument("file")
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("isospectral", help="isospectral class report for one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--out")
    _add_gen_options(p)
    p.set_defaults(func=cmd_isospectral)

    p = sub.add_parser("oracle", help="brute-force count versus enumeration (orders 2..5)")
    p.add_argument("--order", type=int, required=True)
    _add_gen_options(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"msd: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"msd: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
