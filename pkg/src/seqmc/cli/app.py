"""Command-line interface for seqmc.

Exit codes: 0 on success, 1 on audit violations or runtime failures,
2 on invalid configuration.
"""

import argparse
import logging
import math
import sys
from typing import Sequence

from ..analysis.wald import wald_lower_bound
from ..config.loader import env_log_level, load_config
from ..config.models import ExperimentConfig
from ..errors import ConfigError, RejectedInputError
from .output import write_json, write_text
from .runners import run_audits, run_divergence, run_fig1

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="YAML experiment config")
    parser.add_argument("--seed", type=int, help="master seed (unsigned 64-bit)")
    parser.add_argument("--out", help="output path (stdout when omitted)")
    parser.add_argument("--workers", type=int, help="worker processes for repetitions")
    parser.add_argument("--cap", type=int, help="draw cap per hypothesis")
    parser.add_argument("--reps", type=int, help="repetitions")
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seqmc",
        description="Sequential Monte Carlo multiple testing with anytime-valid confidence sequences",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    fig1 = commands.add_parser("fig1", help="survival curve of the undecided-hypothesis count")
    _add_common(fig1)

    diverge = commands.add_parser("diverge", help="truncated-mean growth of stopping times")
    _add_common(diverge)
    diverge.add_argument(
        "--scenario",
        action="append",
        dest="scenarios",
        help="single, uniform or region-a (repeatable; all by default)",
    )

    audit = commands.add_parser("audit", help="run bound, coverage and decision audits")
    _add_common(audit)
    audit.add_argument("--only", action="append", help="run only this audit (repeatable)")
    audit.add_argument("--report", help="write audit results as JSON")

    wald = commands.add_parser("wald", help="evaluate the Wald expected-runtime lower bound")
    wald.add_argument("--p1", type=float, required=True)
    wald.add_argument("--alpha", type=float, required=True)
    wald.add_argument("--epsilon", type=float, required=True)
    wald.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")
    return parser


def configure_logging(level: str | None) -> None:
    name = (level or env_log_level()).upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise ConfigError([f"log_level: unknown level '{name}'"])
    logging.basicConfig(level=numeric, format=LOG_FORMAT, stream=sys.stderr, force=True)


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    return load_config(
        args.config,
        master_seed=args.seed,
        output=args.out,
        workers=args.workers,
        cap=args.cap,
        repetitions=args.reps,
    )


def _cmd_fig1(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    result = run_fig1(config)
    target = write_text(result.csv, config.output)
    for m, median in result.medians.items():
        print(f"m={m}: median undecided {median:g}", file=sys.stderr)
    if target:
        print(f"wrote {target}")
    return EXIT_OK


def _cmd_diverge(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    _, text = run_divergence(config, args.scenarios)
    target = write_text(text, config.output)
    if target:
        print(f"wrote {target}")
    return EXIT_OK


def _cmd_audit(args: argparse.Namespace) -> int:
    config = resolve_config(args)
    results = run_audits(config, args.only)
    failed = [result for result in results if not result.passed]
    for result in results:
        verdict = "PASS" if result.passed else "FAIL"
        print(f"[{verdict}] {result.name}: {result.summary}")
        for violation in result.violations:
            print(f"    {violation}")
        if result.violation_count > len(result.violations):
            print(f"    ... {result.violation_count - len(result.violations)} more")
    if args.report:
        write_json(
            {
                "config_hash": config.config_hash(),
                "master_seed": config.master_seed,
                "results": [result.to_dict() for result in results],
            },
            args.report,
        )
    print(f"{len(results) - len(failed)}/{len(results)} audits passed")
    return EXIT_FAILURE if failed else EXIT_OK


def _cmd_wald(args: argparse.Namespace) -> int:
    try:
        value = wald_lower_bound(args.p1, args.alpha, args.epsilon)
    except RejectedInputError as e:
        raise ConfigError([str(e)]) from e
    print("inf" if math.isinf(value) else format(value, ".12g"))
    return EXIT_OK


COMMANDS = {
    "fig1": _cmd_fig1,
    "diverge": _cmd_diverge,
    "audit": _cmd_audit,
    "wald": _cmd_wald,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        configure_logging(args.log_level)
        return COMMANDS[args.command](args)
    except ConfigError as e:
        print("configuration error:", file=sys.stderr)
        for problem in e.problems:
            print(f"  {problem}", file=sys.stderr)
        return EXIT_CONFIG
    except RejectedInputError as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as e:
        logger.debug("unhandled error", exc_info=True)
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILURE
