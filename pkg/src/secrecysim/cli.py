"""Command line entry point.

    secrecysim run <scenario.yaml> [--out PATH] [--seed N] [--trials N]
    secrecysim presets [--out PATH]

Exit status: 0 on success, 1 for configuration errors, 2 for runtime or
estimation errors (including I/O failures while writing results).
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import load_scenario
from .errors import ConfigError
from .propagation import export_presets_csv
from .runner import emit_results, run_scenario

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secrecysim", description="Physical-layer secrecy scenario runner")
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file and emit a CSV table")
    run.add_argument("scenario")
    run.add_argument("--out", default="-", help="output CSV path (default: stdout)")
    run.add_argument("--seed", type=int, help="override monte_carlo.seed")
    run.add_argument("--trials", type=int, help="override monte_carlo.trials")

    pre = sub.add_parser("presets", help="export path-loss exponent presets as CSV")
    pre.add_argument("--out", default="-")
    return ap


def _cmd_run(args) -> int:
    cfg = load_scenario(args.scenario)
    if args.seed is not None:
        cfg = cfg.with_override("monte_carlo.seed", args.seed)
    if args.trials is not None:
        cfg = cfg.with_override("monte_carlo.trials", args.trials)
    table = run_scenario(cfg)
    emit_results(table, args.out)
    return EXIT_OK


def _cmd_presets(args) -> int:
    export_presets_csv(sys.stdout if args.out == "-" else args.out)
    return EXIT_OK


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_presets(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (OSError, RuntimeError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
