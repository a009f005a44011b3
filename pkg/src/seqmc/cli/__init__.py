"""Batch command-line interface: fig1, diverge, audit and wald.

Provides:
- main: argument parsing, config resolution and exit codes
- run_fig1 / run_divergence / run_audits: the experiment runners
"""

import sys
from typing import Sequence

from .app import EXIT_CONFIG, EXIT_FAILURE, EXIT_OK, build_parser
from .app import main as _main
from .runners import run_audits, run_divergence, run_fig1, undecided_counts


def main(argv: Sequence[str] | None = None) -> int:
    """Console-script entry point; exits with the command's code."""
    code = _main(argv)
    if argv is None:
        sys.exit(code)
    return code


__all__ = [
    "main",
    "build_parser",
    "run_fig1",
    "run_divergence",
    "run_audits",
    "undecided_counts",
    "EXIT_OK",
    "EXIT_FAILURE",
    "EXIT_CONFIG",
]
