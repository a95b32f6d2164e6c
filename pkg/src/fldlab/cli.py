"""Command-line front end: ``fldlab {table,continuous,exact,family,verify}``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input error,
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import continuous as cont
from .family import TemplateError, reduced_lp_bound
from .fldim import fdim_with_witness, fldim_exact
from .poset import PosetFormatError, SizeLimitError, dimension_brute, read_poset
from .reference import PUBLISHED_TABLE, TABLE_COLUMNS, TABLE_DS, truncate6, within_slack
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4

PROFILE_SCHEMA = {
    "type": "array",
    "items": {
        "type": "object",
        "required": list(cont.CSV_FIELDS),
        "additionalProperties": False,
        "properties": {
            "d": {"type": "integer", "minimum": 2},
            **{k: {"type": "number"} for k in ("beta", "delta", "x_bst", "x_bal", "c_bal", "c_bst", "fld")},
            "regime": {"enum": ["Bal", "Bst"]},
        },
    },
}

EXACT_SCHEMA = {
    "type": "object",
    "required": ["param", "n", "value", "decimal"],
    "additionalProperties": False,
    "properties": {
        "param": {"enum": ["fldim", "fdim", "dim"]},
        "n": {"type": "integer"},
        "value": {"type": "string", "pattern": r"^-?\d+(/\d+)?$"},
        "decimal": {"type": "string"},
        "witness": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["ple", "weight"],
                "additionalProperties": False,
                "properties": {"ple": {"type": "array", "items": {"type": "string"}},
                               "weight": {"type": "string", "pattern": r"^\d+/\d+$"}},
            },
        },
    },
}

FAMILY_SCHEMA = {
    "type": "object",
    "required": ["d", "n", "c0", "support_size", "diagnostic", "support"],
    "additionalProperties": False,
    "properties": {
        "d": {"type": "integer"},
        "n": {"type": "integer"},
        "c0": {"type": "string"},
        "support_size": {"type": "integer"},
        "diagnostic": {"type": "boolean"},
        "support": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["a", "m_or_sat", "weight"],
                "additionalProperties": False,
                "properties": {"a": {"type": "integer"}, "m_or_sat": {"type": "string"},
                               "weight": {"type": "string"}},
            },
        },
    },
}


class UsageError(Exception):
    pass


def fmt_real(v: float) -> str:
    return f"{float(v):.12g}"


def fmt_rational(v: Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def fmt_number(v) -> str:
    return fmt_rational(v) if isinstance(v, Fraction) else fmt_real(v)


def _csv(rows: list[list], out) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerows(rows)


def _parse_ds(values: list[str]) -> list[int]:
    ds = []
    for v in values:
        for part in v.split(","):
            part = part.strip()
            if not part:
                continue
            try:
                d = int(part)
            except ValueError:
                raise UsageError(f"bad d value {part!r}") from None
            if d < 2:
                raise UsageError(f"d must be at least 2, got {d}")
            ds.append(d)
    if not ds:
        raise UsageError("no d values given")
    return ds


# ---------------------------------------------------------------- commands

def cmd_table(args, out) -> int:
    rows = [["d", *TABLE_COLUMNS]]
    diffs = []
    for d in TABLE_DS:
        if args.skip_slow and d == 1_000_000:
            continue
        p = cont.solve_profile(d)
        row = [str(d)]
        for col, pub in zip(TABLE_COLUMNS, PUBLISHED_TABLE[d]):
            v = getattr(p, col)
            row.append(str(truncate6(v)))
            if not within_slack(v, pub):
                diffs.append(f"d={d} {col}: computed {truncate6(v)} ({v!r}), published {pub}")
        rows.append(row)
    _csv(rows, out)
    if diffs:
        print(f"{len(diffs)} cell(s) differ from the published table:", file=sys.stderr)
        for line in diffs:
            print("  " + line, file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_continuous(args, out) -> int:
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    profiles = [cont.solve_profile(d, args.tol) for d in _parse_ds(args.d)]
    if args.format == "json":
        json.dump([p.as_row() for p in profiles], out, indent=2)
        out.write("\n")
    else:
        rows = [list(cont.CSV_FIELDS)]
        for p in profiles:
            rows.append([str(v) if isinstance(v, (int, str)) else fmt_real(v) for v in p.as_row().values()])
        _csv(rows, out)
    return EXIT_OK


def cmd_exact(args, out) -> int:
    try:
        P = read_poset(args.poset)
    except OSError as exc:
        print(f"cannot read {args.poset}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_INPUT
    except PosetFormatError as exc:
        print(f"{args.poset}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_size is not None and args.max_size < 1:
        raise UsageError("--max-size must be at least 1")
    cap = args.max_size if args.max_size is not None else (7 if args.param == "dim" else 8)
    witness = None
    try:
        if args.param == "dim":
            value = Fraction(dimension_brute(P, cap=cap))
        elif args.param == "fldim":
            value, witness = fldim_exact(P, cap=cap)
        else:
            value, witness = fdim_with_witness(P, cap=cap)
    except SizeLimitError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CAP
    shown = str(value.numerator) if args.param == "dim" else fmt_rational(value)
    if args.format == "json":
        doc = {"param": args.param, "n": P.n, "value": shown, "decimal": fmt_real(value)}
        if witness is not None:
            doc["witness"] = [{"ple": [P.label(u) for u in M], "weight": fmt_rational(w)}
                              for M, w in witness.weights.items()]
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        _csv([["param", "n", "value", "decimal"], [args.param, P.n, shown, fmt_real(value)]], out)
    return EXIT_OK


def cmd_family(args, out) -> int:
    arithmetic = "rational" if args.exact_rational else "float"
    try:
        res = reduced_lp_bound(args.n, args.d, arithmetic)
    except TemplateError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    support = [(T.a, T.label, w) for T, w in res.support]
    if args.format == "json":
        doc = {"d": res.d, "n": res.n, "c0": fmt_number(res.c0), "support_size": len(support),
               "diagnostic": res.diagnostic,
               "support": [{"a": a, "m_or_sat": lab, "weight": fmt_number(w)} for a, lab, w in support]}
        json.dump(doc, out, indent=2)
        out.write("\n")
        return EXIT_OK
    if res.diagnostic:
        out.write("# diagnostic=true\n")
    _csv([["d", "n", "c0", "support_size"], [res.d, res.n, fmt_number(res.c0), len(support)]], out)
    out.write("\n")
    _csv([["a", "m_or_sat", "weight"]] + [[a, lab, fmt_number(w)] for a, lab, w in support], out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    checks = run_suite(args.suite, skip_slow=args.skip_slow)
    for c in checks:
        out.write(c.line() + "\n")
    failed = sum(not c.passed for c in checks)
    out.write(f"{len(checks) - failed} passed, {failed} failed\n")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fldlab", description="Fractional local dimension toolkit.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="reproduce the published table of continuous constants")
    p.add_argument("--skip-slow", action="store_true", help="omit the d = 10^6 row")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("continuous", help="continuous-limit constants for chosen d")
    p.add_argument("--d", nargs="+", required=True, help="values of d, comma or space separated")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--tol", type=float, default=1e-13)
    p.set_defaults(func=cmd_continuous)

    p = sub.add_parser("exact", help="exact fldim, fdim or dim of a poset file")
    p.add_argument("--poset", required=True)
    p.add_argument("--param", choices=("fldim", "fdim", "dim"), default="fldim")
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("family", help="reduced LP bound for P(1,d;n)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact-rational", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--skip-slow", action="store_true", help="smaller corpora and no d = 10^6")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except UsageError as exc:
        print(f"fldlab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(buf.getvalue())
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
