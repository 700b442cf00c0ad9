"""Command-line front end.

    zetareg eval "mu(3)"
    zetareg lambda-table --from -4 --to 2 --step 0.5 --format csv
    zetareg verify --suite all
    zetareg regint --series exp --n 20

Exit codes: 0 success, 1 domain error, 2 parse error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import List, Optional

from .errors import QueryParseError, ZetaRegError
from .mucore import DEFAULT_TRUNCATION
from .query import evaluate, parse, regint_document
from .regint import builtin_series, load_series_file
from .special import EvalPrecision
from .tables import lambda_table
from .verify import SUITES, verify

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE, EXIT_VERIFY = 0, 1, 2, 3


def _flatten(doc: dict, prefix: str = ""):
    for key, value in doc.items():
        if isinstance(value, dict):
            yield from _flatten(value, f"{prefix}{key}.")
        elif isinstance(value, list):
            yield f"{prefix}{key}", " ".join(str(v) for v in value)
        else:
            yield f"{prefix}{key}", value


def _emit(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(doc))
        return buf.getvalue()
    width = max(len(k) for k, _ in _flatten(doc))
    return "".join(f"{k:<{width}}  {v}\n" for k, v in _flatten(doc))


def _report_error(exc: ZetaRegError, fmt: str, source: Optional[str] = None) -> int:
    if fmt == "json":
        sys.stderr.write(json.dumps({"error": exc.to_dict()}) + "\n")
    else:
        sys.stderr.write(f"error: {exc}\n")
        if isinstance(exc, QueryParseError):
            if exc.expected:
                sys.stderr.write(f"  expected: {exc.expected}\n")
            if source is not None and exc.offset is not None:
                # caret under the offending byte; queries are ASCII in practice
                sys.stderr.write(f"  {source}\n  {' ' * exc.offset}^\n")
    return exc.exit_code


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _precision(args) -> EvalPrecision:
    return EvalPrecision(target_rel_error=args.precision)


def cmd_eval(args) -> int:
    try:
        ast = parse(args.expr)
        doc = evaluate(ast, precision=_precision(args), truncation=args.truncation,
                       series_file=args.series_file)
    except ZetaRegError as exc:
        return _report_error(exc, args.format, args.expr)
    sys.stdout.write(_emit(doc, args.format))
    return EXIT_OK


def cmd_lambda_table(args) -> int:
    fmt = "csv" if args.format == "text" else args.format
    try:
        sys.stdout.write(lambda_table(args.start, args.stop, args.step, fmt))
    except ZetaRegError as exc:
        return _report_error(exc, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify(args.suite)
    ok = all(r.passed for r in results)
    if args.format == "json":
        payload = {"passed": ok, "checks": [r.__dict__ for r in results]}
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "passed", "worst_residual", "tolerance"])
        for r in results:
            w.writerow([r.suite, r.name, r.passed, repr(r.worst_residual), repr(r.tolerance)])
        sys.stdout.write(buf.getvalue())
    else:
        for r in results:
            sys.stdout.write(r.line() + "\n")
        passed = sum(r.passed for r in results)
        sys.stdout.write(f"{passed}/{len(results)} checks passed\n")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_regint(args) -> int:
    try:
        if args.series_file:
            series = load_series_file(args.series_file)
        elif args.series:
            series = builtin_series(args.series)
        else:
            raise ZetaRegError("give --series NAME or --series-file PATH", code="E_USAGE")
        doc = regint_document(series, args.n)
    except OSError as exc:
        return _report_error(ZetaRegError(str(exc), code="E_SERIES_FILE"), args.format)
    except ZetaRegError as exc:
        return _report_error(exc, args.format)
    sys.stdout.write(_emit(doc, args.format))
    return EXIT_OK


def _common(default_format: str = "text") -> argparse.ArgumentParser:
    # a fresh parent per subcommand: argparse shares parent actions, so a
    # per-subcommand default would otherwise leak into the others
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default=default_format)
    common.add_argument("--precision", type=_positive_float, default=1e-12, metavar="REL_ERR",
                        help="target relative error for series evaluation")
    common.add_argument("--series-file", default=None, metavar="PATH",
                        help="coefficient file with lines 'k,p/q'")
    common.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, metavar="N",
                        help="terms in the non-integer mu certificate series")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zetareg",
                                     description="Zeta-regularized integrals of power functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[_common()], help="evaluate a single expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lambda-table", parents=[_common("csv")], help="tabulate lambda(r)")
    p.add_argument("--from", dest="start", required=True)
    p.add_argument("--to", dest="stop", required=True)
    p.add_argument("--step", required=True)
    p.set_defaults(func=cmd_lambda_table)

    p = sub.add_parser("verify", parents=[_common()], help="run the identity checks")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("regint", parents=[_common()], help="regularized integral of a power series")
    p.add_argument("--series", default=None, help="exp, geometric, sin or cos")
    p.add_argument("--n", type=int, default=20, help="last index of the partial sum")
    p.set_defaults(func=cmd_regint)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
