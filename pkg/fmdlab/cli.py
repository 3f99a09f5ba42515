#!/usr/bin/env python3
"""Command-line interface for fmdlab."""

import argparse
import cProfile
import logging
import pstats
import signal
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from .config import COMMANDS, RunConfig, load_config
from .errors import (
    ConfigError, ConstructionRefused, InvalidPresentation, LabError, NoEmbedding, SizeGuardExceeded,
)
from .experiments import EXPERIMENTS
from .output import write_outputs
from .runner import run

log = logging.getLogger(__name__)

# flags forwarded to the experiment as keyword arguments
EXPERIMENT_FLAGS = ("n", "q", "p", "d", "k_d", "k_k", "depth", "max_n")

# unexpected exceptions; 1 is reserved for failed checks
INTERNAL_ERROR = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmdlab",
        description="fmdlab - factor ideals into molecules inside certified finite models",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )

    parser.add_argument("command", choices=COMMANDS, help="What to run")
    parser.add_argument("experiment", nargs="?", choices=sorted(EXPERIMENTS),
                        help="Experiment name (for the experiment command)")

    parser.add_argument("--ambient", type=Path, help="TOML document describing the ambient or ring")
    parser.add_argument("--json", action="store_true", help="Print the report as JSON")
    parser.add_argument("--seed", type=int, help="Seed for sampled property checks (default 0)")
    parser.add_argument("--max-ring-size", type=int,
                        help="Largest ring or quotient an enumeration may iterate (default 2**24)")
    parser.add_argument("--out", type=Path, help="Also write the JSON report to this file")
    parser.add_argument("--workers", type=int, help="Threads for the molecularization search")
    parser.add_argument("--trials", type=int, help="Random samples per property check")
    parser.add_argument("--timings", action="store_true", help="Record phase timings in the report")

    params = parser.add_argument_group("experiment parameters")
    params.add_argument("--n", type=int, help="Integer generating the target ideal of Z")
    params.add_argument("--q", type=int, help="Field size (prime power)")
    params.add_argument("--p", type=int, help="Prime")
    params.add_argument("--d", type=int, help="Squarefree negative integer for Z[sqrt(d)]")
    params.add_argument("--k-d", type=int, help="Degree of D over F_p")
    params.add_argument("--k-k", type=int, help="Degree of K over F_p")
    params.add_argument("--depth", type=int, help="Truncation depth")
    params.add_argument("--max-n", type=int, help="Upper end of the integer sweep")

    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")
    parser.add_argument("--profile", action="store_true",
                        help="Enable performance profiling to identify bottlenecks")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Merge the optional TOML document with command-line flags; flags win."""
    config = load_config(args.ambient) if args.ambient else RunConfig()
    config.command = args.command
    if args.experiment:
        config.experiment = args.experiment
    elif args.command != "experiment":
        config.experiment = None
    for name in ("seed", "max_ring_size", "workers", "trials"):
        value = getattr(args, name)
        if value is not None:
            setattr(config, name, value)
    if args.json:
        config.output = "json"
    if args.out:
        config.report_path = args.out
    if args.timings:
        config.include_timings = True
    for name in EXPERIMENT_FLAGS:
        value = getattr(args, name)
        if value is not None:
            config.experiment_args[name] = value
    return config.validate()


def exit_code_for(error: Exception) -> int:
    if isinstance(error, SizeGuardExceeded):
        return 3
    if isinstance(error, (ConfigError, InvalidPresentation, ConstructionRefused, NoEmbedding)):
        return 2
    return 1


def _execute(config: RunConfig) -> int:
    status, report = run(config)
    write_outputs(report, config.output, config.report_path)
    return status


def main(argv: Optional[List[str]] = None) -> int:
    # Handle Ctrl+C gracefully
    def signal_handler(signum, frame):
        print("\nInterrupted by user. Exiting...", file=sys.stderr)
        sys.exit(130)  # Standard exit code for SIGINT

    signal.signal(signal.SIGINT, signal_handler)

    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    try:
        config = config_from_args(args)
        if args.profile:
            print("Profiling enabled. This will add some overhead to the run.", file=sys.stderr)
            profiler = cProfile.Profile()
            profiler.enable()
            status = _execute(config)
            profiler.disable()
            print("\n=== Performance Profile (Top 20 functions by cumulative time) ===", file=sys.stderr)
            stats = pstats.Stats(profiler, stream=sys.stderr).sort_stats("cumulative")
            stats.print_stats(20)
        else:
            status = _execute(config)
    except LabError as e:
        print(f"Error: {e}", file=sys.stderr)
        return exit_code_for(e)
    except Exception as e:
        print(f"Internal error: {type(e).__name__}: {e}", file=sys.stderr)
        if args.verbose:
            traceback.print_exc()
        return INTERNAL_ERROR
    return status


if __name__ == "__main__":
    sys.exit(main())
