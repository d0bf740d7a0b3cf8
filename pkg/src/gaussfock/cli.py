"""Command line: ``gaussfock run <experiment> [--config PATH] [--out DIR] [--seed U64] [--json]`` and ``gaussfock list``.

Exit codes: 0 all checks pass, 2 usage error, 3 assertion failure,
4 numerical residual failure.
"""
from __future__ import annotations

import argparse
import sys

from .experiments import EXPERIMENTS, ConfigError, load_config, run_experiment

EXIT_OK, EXIT_USAGE, EXIT_ASSERTION, EXIT_RESIDUAL = 0, 2, 3, 4


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gaussfock",
                                     description="Run Gauss-Bargmann / Fock-space verification experiments.")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment and write its report")
    run.add_argument("experiment", help="experiment name (see `list`)")
    run.add_argument("--config", help="key=value config file")
    run.add_argument("--out", default="reports", help="directory for the JSON report and CSV tables")
    run.add_argument("--seed", type=_u64, help="unsigned 64-bit seed (overrides the config)")
    run.add_argument("--json", action="store_true", help="print the report payload as JSON")
    sub.add_parser("list", help="list experiments with their anchors")
    return parser


def catalog_lines():
    return [f"{name} — {exp.anchor}" for name, exp in EXPERIMENTS.items()]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:        # argparse exits with 2 on usage errors
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "list":
        print("\n".join(catalog_lines()))
        return EXIT_OK
    if args.experiment not in EXPERIMENTS:
        print(f"unknown experiment {args.experiment!r}; try `gaussfock list`", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = load_config(args.config) if args.config else {}
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report, elapsed = run_experiment(args.experiment, cfg, args.seed)
    paths = report.write(args.out, elapsed)
    if args.json:
        print(report.payload_json())
    else:
        for m in report.metrics:
            print(f"{'PASS' if m.passed else 'FAIL'}  {m.name} = {m.value} (tolerance {m.tolerance})")
        if report.error:
            print(f"ERROR {report.error}")
        print(f"{'PASS' if report.passed else 'FAIL'} {report.experiment} in {elapsed:.2f}s; "
              f"report {paths[0]}")
    return report.exit_code


if __name__ == "__main__":   # pragma: no cover
    sys.exit(main())
