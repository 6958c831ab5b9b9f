"""Command-line front end.

Subcommands map one-to-one onto the library: ``eval`` (series evaluation),
``recognize`` (term-ratio to pFq form), ``whipple`` (shape match and closed
forms), ``verify`` (one identity report), and ``sweep`` (all reports up to
a bound).  Output formats: human table (default), json, csv.  Rationals are
serialized as exact "p/q" strings, never floats.

Exit codes: 0 success / all-pass, 1 identity violation or domain failure
(no match, nonterminating input, pole), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .errors import HypergeometricError
from .hyper_series import Classification, HypSeries, classify, eval_exact, eval_numeric
from .sesma_identity import IdentityReport, sweep as run_sweep, verify as run_verify
from .term_recognize import IntPolynomial, TermRatio, recognize
from .whipple import match_whipple, rhs_exact_terminating, rhs_numeric

__all__ = ["ParseError", "ZeroDenominator", "parse_rational", "run", "main"]

_DIGITS = set("0123456789")


class ParseError(ValueError):
    """Malformed rational text; ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class ZeroDenominator(ParseError):
    """A rational literal with denominator zero."""


def parse_rational(text: str) -> Fraction:
    """Parse "p", "+p", "-p", or "p/q" into a canonical rational."""

    def byte_offset(char_index: int) -> int:
        return len(text[:char_index].encode("utf-8"))

    i = 0
    if i < len(text) and text[i] in "+-":
        i += 1
    start = i
    while i < len(text) and text[i] in _DIGITS:
        i += 1
    if i == start:
        raise ParseError("expected a digit", byte_offset(i))
    numerator = int(text[:i])
    if i == len(text):
        return Fraction(numerator)
    if text[i] != "/":
        raise ParseError(f"unexpected character {text[i]!r}", byte_offset(i))
    i += 1
    den_start = i
    while i < len(text) and text[i] in _DIGITS:
        i += 1
    if i == den_start:
        raise ParseError("expected a digit after '/'", byte_offset(i))
    if i != len(text):
        raise ParseError(f"unexpected character {text[i]!r}", byte_offset(i))
    denominator = int(text[den_start:])
    if denominator == 0:
        raise ZeroDenominator("denominator must be nonzero", byte_offset(den_start))
    return Fraction(numerator, denominator)


def _parse_rational_list(text: Optional[str]) -> list[Fraction]:
    if not text:
        return []
    return [parse_rational(part.strip()) for part in text.split(",")]


def _parse_int_list(text: Optional[str]) -> list[int]:
    if not text:
        return []
    out = []
    for part in text.split(","):
        value = parse_rational(part.strip())
        if value.denominator != 1:
            raise ParseError(f"expected an integer coefficient, got {part.strip()!r}", 0)
        out.append(value.numerator)
    return out


def _rat(x: Fraction) -> str:
    return str(x)


def _classification_fields(cls: Classification) -> dict:
    return {"kind": cls.kind.value, "index": cls.index}


def _series_fields(s: HypSeries) -> dict:
    canonical = s.canonical()
    return {
        "upper": [_rat(a) for a in canonical.upper],
        "lower": [_rat(b) for b in canonical.lower],
        "z": _rat(canonical.z),
    }


def _report_fields(report: IdentityReport) -> dict:
    return {
        "k": report.k,
        "m": report.m,
        "direct": _rat(report.direct),
        "via_series": _rat(report.via_series),
        "via_whipple": _rat(report.via_whipple),
        "all_equal_one": report.all_equal_one,
    }


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, indent=2) + "\n")
    elif fmt == "csv":
        _emit_csv(doc, out)
    else:
        _emit_table(doc, out)


def _emit_csv(doc: dict, out) -> None:
    results = doc["results"]
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    if results:
        header = list(results[0].keys())
        writer.writerow(header)
        for row in results:
            writer.writerow([_csv_cell(row[key]) for key in header])
    out.write(buffer.getvalue())


def _csv_cell(value) -> str:
    if isinstance(value, list):
        return ",".join(str(v) for v in value)
    if isinstance(value, dict):
        return json.dumps(value)
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _emit_table(doc: dict, out) -> None:
    results = doc["results"]
    if results:
        header = list(results[0].keys())
        rows = [[_csv_cell(row[key]) for key in header] for row in results]
        widths = [
            max(len(name), *(len(row[i]) for row in rows)) for i, name in enumerate(header)
        ]
        out.write("  ".join(name.ljust(widths[i]) for i, name in enumerate(header)).rstrip() + "\n")
        for row in rows:
            out.write("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip() + "\n")
    summary = doc.get("summary") or {}
    for key, value in summary.items():
        out.write(f"{key}: {_csv_cell(value)}\n")


def _cmd_eval(args, out) -> int:
    series = HypSeries(
        _parse_rational_list(args.upper),
        _parse_rational_list(args.lower),
        parse_rational(args.z),
    )
    cls = classify(series)
    result: dict = dict(_series_fields(series))
    result["classification"] = str(cls)
    status = "ok"
    exit_code = 0
    try:
        if args.numeric:
            result["value"] = eval_numeric(series, args.tol)
        else:
            result["value"] = _rat(eval_exact(series))
    except HypergeometricError as exc:
        result["value"] = None
        status = f"error: {exc}"
        exit_code = 1
    doc = {
        "command": "eval",
        "inputs": {
            "upper": [_rat(a) for a in series.upper],
            "lower": [_rat(b) for b in series.lower],
            "z": _rat(series.z),
            "numeric": bool(args.numeric),
            "tol": args.tol if args.numeric else None,
        },
        "results": [result],
        "summary": {"classification": _classification_fields(cls), "status": status},
    }
    _emit(doc, args.format, out)
    return exit_code


def _cmd_recognize(args, out) -> int:
    num = IntPolynomial(_parse_int_list(args.num))
    den = IntPolynomial(_parse_int_list(args.den))
    t0 = parse_rational(args.t0)
    inputs = {
        "num": list(num.coefficients),
        "den": list(den.coefficients),
        "t0": _rat(t0),
    }
    try:
        ratio = TermRatio(num=num, den=den, t0=t0)
        recognized = recognize(ratio)
    except (HypergeometricError, ValueError) as exc:
        doc = {
            "command": "recognize",
            "inputs": inputs,
            "results": [],
            "summary": {"status": f"error: {exc}"},
        }
        _emit(doc, args.format, out)
        return 1
    result = {"prefactor": _rat(recognized.prefactor)}
    result.update(_series_fields(recognized.series))
    doc = {
        "command": "recognize",
        "inputs": inputs,
        "results": [result],
        "summary": {"status": "ok"},
    }
    _emit(doc, args.format, out)
    return 0


def _cmd_whipple(args, out) -> int:
    series = HypSeries(
        _parse_rational_list(args.upper),
        _parse_rational_list(args.lower),
        parse_rational(args.z),
    )
    inputs = {
        "upper": [_rat(a) for a in series.upper],
        "lower": [_rat(b) for b in series.lower],
        "z": _rat(series.z),
    }
    match = match_whipple(series)
    if match is None:
        doc = {
            "command": "whipple",
            "inputs": inputs,
            "results": [],
            "summary": {"status": "no-match"},
        }
        _emit(doc, args.format, out)
        return 1
    result: dict = {"a": _rat(match.a), "b": _rat(match.b), "c": _rat(match.c)}
    try:
        result["exact"] = _rat(rhs_exact_terminating(match))
        result["exact_note"] = None
    except HypergeometricError as exc:
        result["exact"] = None
        result["exact_note"] = str(exc)
    try:
        result["numeric"] = rhs_numeric(match)
        result["numeric_note"] = None
    except ValueError as exc:
        result["numeric"] = None
        result["numeric_note"] = str(exc)
    doc = {
        "command": "whipple",
        "inputs": inputs,
        "results": [result],
        "summary": {"status": "matched"},
    }
    _emit(doc, args.format, out)
    return 0


def _cmd_verify(args, out) -> int:
    try:
        report = run_verify(args.k, args.m)
    except HypergeometricError as exc:
        doc = {
            "command": "verify",
            "inputs": {"k": args.k, "m": args.m},
            "results": [],
            "summary": {"status": f"error: {exc}"},
        }
        _emit(doc, args.format, out)
        return 1
    doc = {
        "command": "verify",
        "inputs": {"k": args.k, "m": args.m},
        "results": [_report_fields(report)],
        "summary": {"all_equal_one": report.all_equal_one},
    }
    _emit(doc, args.format, out)
    return 0 if report.all_equal_one else 1


def _cmd_sweep(args, out) -> int:
    reports = run_sweep(args.max_k, jobs=args.jobs)
    passed = sum(1 for r in reports if r.all_equal_one)
    all_pass = passed == len(reports)
    # jobs is deliberately not echoed: output bytes must not depend on it
    doc = {
        "command": "sweep",
        "inputs": {"max_k": args.max_k},
        "results": [_report_fields(r) for r in reports],
        "summary": {
            "count": len(reports),
            "passed": passed,
            "all_pass": all_pass,
            "line": f"{passed}/{len(reports)} pass",
        },
    }
    _emit(doc, args.format, out)
    return 0 if all_pass else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypcert",
        description="Exact evaluation, recognition, and certification of "
        "terminating hypergeometric series.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default="table",
        help="output format (default: table)",
    )
    # the same flag is accepted after the subcommand; SUPPRESS keeps an
    # unset subcommand-level flag from clobbering the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("table", "json", "csv"),
        default=argparse.SUPPRESS,
        help=argparse.SUPPRESS,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a pFq series", parents=[common])
    p.add_argument("--upper", default="", help="comma-separated upper parameters")
    p.add_argument("--lower", default="", help="comma-separated lower parameters")
    p.add_argument("--z", required=True, help="series argument as p/q")
    p.add_argument("--numeric", action="store_true", help="use the floating-point path")
    p.add_argument("--tol", type=float, default=1e-12, help="numeric tolerance (default 1e-12)")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("recognize", help="turn a term ratio P(n)/Q(n) into prefactor * pFq", parents=[common])
    p.add_argument("--num", required=True, help="P coefficients c0,c1,... (ascending)")
    p.add_argument("--den", required=True, help="Q coefficients d0,d1,... (ascending)")
    p.add_argument("--t0", default="1", help="initial term (default 1)")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("whipple", help="match the Whipple 4F3 shape and evaluate closed forms", parents=[common])
    p.add_argument("--upper", default="", help="comma-separated upper parameters")
    p.add_argument("--lower", default="", help="comma-separated lower parameters")
    p.add_argument("--z", required=True, help="series argument as p/q")
    p.set_defaults(func=_cmd_whipple)

    p = sub.add_parser("verify", help="certify the binomial identity at one (k, m)", parents=[common])
    p.add_argument("k", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="certify the identity for all 0 <= m <= k <= K", parents=[common])
    p.add_argument("--max-k", type=int, required=True, help="largest k to verify")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p.set_defaults(func=_cmd_sweep)

    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    """Parse argv, dispatch, and emit one document; returns the exit code."""
    out = stdout if stdout is not None else sys.stdout
    err = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        # argparse already printed usage/version to the right stream
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        parser.print_usage(err)
        return 2
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        parser.print_usage(err)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))
