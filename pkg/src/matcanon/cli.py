"""Command-line front end.

Subcommands take a matrix file, print a JSON report on stdout and exit
0 on success, 2 when the input is rejected by a precondition, 1 on I/O
or parse problems.  `verify` rechecks a stored report; `truncation-study`
runs the finite-section families and can write a CSV table.
"""

import argparse
import json
import sys

from .core import DEFAULT_TOL
from .errors import PreconditionError
from .matrixio import MatrixFormatError, parse_matrix
from .report import build_report, render_json, verify_report
from .truncation import FAMILIES, run_truncation_study, study_to_csv

DECOMPOSITION_KINDS = (
    "williamson",
    "skew",
    "normal-form",
    "spectral-pair",
    "transpose-equiv",
    "symplectic-spectrum",
)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="matcanon",
        description="Canonical forms of dense real matrices with verifiable reports.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for kind in DECOMPOSITION_KINDS:
        p = sub.add_parser(kind, help=f"{kind} decomposition report")
        p.add_argument("input", help="matrix file (ROWS COLS header, then rows)")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                       help="tolerance handed to the decomposition")
        p.add_argument("--out", default=None, help="also write the report here")

    p = sub.add_parser("verify", help="recompute and check a stored report")
    p.add_argument("report", help="report JSON file produced by a subcommand")

    p = sub.add_parser("truncation-study", help="finite-section spectra study")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--sizes", required=True,
                   help="comma-separated strictly increasing sizes, e.g. 4,8,16,32")
    p.add_argument("--c", type=float, default=1.0, help="thermal coefficient c > 0")
    p.add_argument("--alpha", type=float, default=2.0, help="thermal decay alpha > 0")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="coupling strength (coupled-chain only)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", default=None, help="write a table of the spectra here")
    p.add_argument("--format", choices=("json", "csv"), default="csv",
                   help="format of the --out file")
    return parser


def _cmd_decomposition(kind, args):
    try:
        a = parse_matrix(args.input)
    except (OSError, MatrixFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = build_report(kind, a, args.tol)
    text = render_json(report) + "\n"
    sys.stdout.write(text)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return 0 if report["status"] == "ok" else 2


def _cmd_verify(args):
    try:
        with open(args.report, "r", encoding="utf-8") as fh:
            report = json.load(fh)
        failures = verify_report(report)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: malformed report: {exc}", file=sys.stderr)
        return 1
    if failures:
        for line in failures:
            print(f"FAIL: {line}")
        return 2
    print("ok: all residuals reproduced and within tolerance")
    return 0


def _cmd_truncation(args):
    try:
        sizes = [int(tok) for tok in args.sizes.split(",") if tok.strip()]
    except ValueError:
        print(f"error: bad --sizes {args.sizes!r}", file=sys.stderr)
        return 1
    try:
        study = run_truncation_study(
            args.family, sizes, args.c, args.alpha,
            eps=args.epsilon, seed=args.seed, tol=args.tol,
        )
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render_json(study) + "\n")
    if args.out:
        payload = study_to_csv(study) if args.format == "csv" else render_json(study) + "\n"
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command in DECOMPOSITION_KINDS:
        return _cmd_decomposition(args.command, args)
    if args.command == "verify":
        return _cmd_verify(args)
    if args.command == "truncation-study":
        return _cmd_truncation(args)
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
