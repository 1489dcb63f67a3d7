"""Command-line front end."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from itertools import permutations

from . import suites
from .bijections import bijection_audit, strictness_witness_213, strictness_witness_312
from .diagram import parse_diagram
from .formulas import FAMILIES, CountRow, CountTable, family_count, sw_limit_estimate, wilf_table
from .transversal import count_avoiders, enumerate_avoiders, parse_pattern, pattern_text

MAX_SIZE = 9
FORMATS = ("text", "csv", "json")
TABLE_FAMILIES = ("S4",) + FAMILIES
# default sweep sizes, each finishing in a few minutes on one core
VERIFY_DEFAULTS = {"main-theorem": 8, "theorem2": 8, "bijections": 6, "splitting": 7, "properties": 6}


class UsageError(Exception):
    pass


def _range(text: str) -> range:
    """'6..8' or '20' (meaning 1..20)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return range(int(lo), int(hi) + 1)
        return range(1, int(text) + 1)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N or LO..HI") from None


def _check_size(size: int, force: bool, what: str = "diagram size") -> None:
    if size > MAX_SIZE and not force:
        raise UsageError(f"{what} {size} exceeds {MAX_SIZE}; pass --force to run anyway")


def _emit(fmt: str, text: str, rows: list[dict], payload) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    return text


def _patterns(args) -> list[tuple[int, ...]]:
    if not args.pattern:
        raise UsageError("at least one -p/--pattern is required")
    return [parse_pattern(p) for p in args.pattern]


# -- verbs ---------------------------------------------------------------------

def cmd_count(args) -> int:
    Y = parse_diagram(args.diagram)
    _check_size(Y.num_rows, args.force)
    patterns = _patterns(args)
    value = count_avoiders(Y, patterns)
    names = ",".join(pattern_text(p) for p in patterns)
    row = {"diagram": Y.to_text(), "patterns": names, "count": value, "source": "enumeration"}
    print(_emit(args.format, str(value), [row], row))
    return 0


def cmd_enumerate(args) -> int:
    Y = parse_diagram(args.diagram)
    _check_size(Y.num_rows, args.force)
    if args.map:
        records = bijection_audit(Y, args.map)
        text = "\n".join(
            f"{''.join(map(str, r['domain']))} -> {''.join(map(str, r['image']))}"
            f"  fiber={r['fiber']} moves={len(r['moves'])}"
            for r in records
        )
        flat = [{"domain": " ".join(map(str, r["domain"])), "image": " ".join(map(str, r["image"])),
                 "fiber": r["fiber"], "moves": len(r["moves"])} for r in records]
        print(_emit(args.format, text, flat, records))
        return 0
    patterns = [parse_pattern(p) for p in args.pattern or []]
    found = enumerate_avoiders(Y, patterns)
    if args.limit is not None:
        found = found[: args.limit]
    rows = [{"word": " ".join(map(str, T.word))} for T in found]
    text = "\n".join(str(T) for T in found)
    print(_emit(args.format, text, rows, {"diagram": list(Y.rows), "transversals": [list(T.word) for T in found]}))
    return 0


def cmd_verify(args) -> int:
    max_size = args.max_size if args.max_size is not None else VERIFY_DEFAULTS[args.suite]
    _check_size(max_size, args.force, "--max-size")
    jobs = args.jobs if args.jobs is not None else suites.default_jobs()
    if args.suite in ("main-theorem", "theorem2"):
        report = suites.SUITES[args.suite](max_size, args.min_size, jobs)
    else:
        report = suites.SUITES[args.suite](max_size, jobs)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        print(report.to_csv().rstrip("\n"))
    else:
        print(report.to_text())
    if not report.passed and args.format != "text":
        print(report.to_text(), file=sys.stderr)
    return 0 if report.passed else 1


def cmd_table(args) -> int:
    n_range = _range(args.n)
    _check_size(max(n_range), args.force, "n")
    family = args.family
    if family.upper() == "S4":
        patterns = [parse_pattern(p) for p in args.pattern] if args.pattern else [(3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1)]
        table = wilf_table(n_range, patterns)
    else:
        patterns = [parse_pattern(p) for p in args.pattern] if args.pattern else list(permutations((1, 2, 3)))
        table = CountTable()
        for n in n_range:
            for tau in patterns:
                value, source = family_count(family, tau, n)
                table.rows.append(CountRow(n, pattern_text(tau), value, source, family))
    if args.format == "json":
        print(table.to_json())
    elif args.format == "csv":
        print(table.to_csv().rstrip("\n"))
    else:
        print(table.to_text())
    return 0


def cmd_limits(args) -> int:
    n_range = _range(args.n)
    tau = parse_pattern(args.pattern)
    if len(tau) != 3:
        _check_size(max(n_range), args.force, "n")
    est = sw_limit_estimate(args.family, tau, max(n_range), min(n_range), args.precision)
    rows = [{k: r[k] for k in ("n", "count", "source", "root", "ratio")} for r in est.rows]
    text = "\n".join(
        f"n={r['n']:<3} count={r['count']:<14} root={float(r['root']):.9f} "
        + (f"ratio={float(r['ratio']):.9f}" if r["ratio"] is not None else "ratio=-")
        for r in est.rows
    )
    payload = {"family": est.family, "pattern": est.pattern, "precision": est.precision, "rows": rows}
    print(_emit(args.format, text, rows, payload))
    return 0


def cmd_witnesses(args) -> int:
    Y = parse_diagram(args.diagram)
    _check_size(Y.num_rows, args.force)
    out = {"diagram": list(Y.rows)}
    lines = [f"diagram {Y}"]
    try:
        w = strictness_witness_213(Y)
        out["123_not_from_213"] = list(w.word)
        lines.append(f"123-avoider outside the image of psi: {w}")
    except ValueError as exc:
        out["123_not_from_213"] = None
        lines.append(f"no 213/123 witness: {exc}")
    try:
        a, b = strictness_witness_312(Y)
        out["312_same_phi_image"] = [list(a.word), list(b.word)]
        lines.append(f"312-avoiders with one phi image: {a} {b}")
    except ValueError as exc:
        out["312_same_phi_image"] = None
        lines.append(f"no 312/321 witness: {exc}")
    rows = [{"kind": k, "words": json.dumps(v)} for k, v in out.items() if k != "diagram"]
    print(_emit(args.format, "\n".join(lines), rows, out))
    return 0


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shapewilf", description="Pattern avoidance on Young diagrams.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, diagram=False):
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--force", action="store_true", help=f"allow sizes above {MAX_SIZE}")
        if diagram:
            p.add_argument("-Y", "--diagram", required=True,
                           help="row lengths from the top, e.g. 5,5,5,5,4")

    p = sub.add_parser("count", help="count transversals avoiding the given patterns")
    common(p, diagram=True)
    p.add_argument("-p", "--pattern", action="append", help="e.g. 213 or '213|1'; repeat for sets")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list avoiders, or audit phi/psi on a diagram")
    common(p, diagram=True)
    p.add_argument("-p", "--pattern", action="append")
    p.add_argument("--limit", type=int)
    p.add_argument("--map", choices=("phi", "psi"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", help="run an exhaustive verification suite")
    common(p)
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--max-size", type=int)
    p.add_argument("--min-size", type=int, default=1)
    p.add_argument("--jobs", type=int, help="worker processes (env SHAPEWILF_JOBS)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="count tables for pattern families")
    common(p)
    p.add_argument("--family", default="S4", help=f"one of {', '.join(TABLE_FAMILIES)}")
    p.add_argument("--n", default="6..7", help="N or LO..HI")
    p.add_argument("-p", "--pattern", action="append")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("limits", help="n-th roots and ratios along a diagram family")
    common(p)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("-p", "--pattern", required=True)
    p.add_argument("--n", default="20", help="N or LO..HI")
    p.add_argument("--precision", type=int, default=30)
    p.set_defaults(func=cmd_limits)

    p = sub.add_parser("witnesses", help="transversals showing strict inequalities")
    common(p, diagram=True)
    p.set_defaults(func=cmd_witnesses)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"shapewilf: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
