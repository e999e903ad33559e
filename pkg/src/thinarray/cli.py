"""
Main CLI entry point for thinarray.

This module provides a unified CLI with one subcommand per pipeline stage.
"""

import argparse
import sys
from typing import List, Optional

from .arrays.cli_arrays import (activation_map_command, create_activation_map_parser, create_mask_parser,
                                create_pattern_parser, mask_command, pattern_command)
from .emulator.cli_train import (create_learning_curve_parser, create_train_parser, learning_curve_command,
                                 train_command)
from .network.cli_dataset import create_describe_parser, create_gen_dataset_parser, describe_command, gen_dataset_command
from .optimizer.cli_optimize import (compare_command, create_compare_parser, create_optimize_parser,
                                     create_slices_parser, optimize_command, slices_command)
from .runtime import EXIT_USAGE

SUBCOMMANDS = (
    ("gen-dataset", "Simulate SINR statistics for random design points", create_gen_dataset_parser, gen_dataset_command),
    ("describe", "Correlation summary of a dataset", create_describe_parser, describe_command),
    ("train", "Train an emulator of one simulator output", create_train_parser, train_command),
    ("learning-curve", "Cross-validated nRMSE versus training size", create_learning_curve_parser, learning_curve_command),
    ("optimize", "Constrained optimization over the emulators", create_optimize_parser, optimize_command),
    ("slices", "Emulator predictions along one parameter", create_slices_parser, slices_command),
    ("compare", "Simulated scatter of antenna families", create_compare_parser, compare_command),
    ("activation-map", "Per-element activation frequency", create_activation_map_parser, activation_map_command),
    ("mask", "Draw one thinned mask", create_mask_parser, mask_command),
    ("pattern", "Radiation pattern of one antenna", create_pattern_parser, pattern_command),
)


def create_main_parser() -> argparse.ArgumentParser:
    """Create the main argument parser with subcommands."""
    parser = argparse.ArgumentParser(
        prog="thinarray",
        description="Network-level optimization of thinned antenna arrays",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray gen-dataset --n-configs 400 --n-iter 1000 --seed 1 --out data/dataset.csv
  thinarray train --dataset data/dataset.csv --model rf --target mean --out models/mean.json
  thinarray train --dataset data/dataset.csv --model rf --target p5 --out models/p5.json
  thinarray optimize --model-mean models/mean.json --model-p5 models/p5.json --out results/optimum.json
  thinarray compare --result results/optimum.json --out results/scatter.csv
        """
    )

    subparsers = parser.add_subparsers(
        dest="command",
        help="Available commands",
        metavar="{" + ",".join(name for name, *_ in SUBCOMMANDS) + "}"
    )
    for name, help_text, create, command in SUBCOMMANDS:
        sub = subparsers.add_parser(name, help=help_text, parents=[create()], add_help=False)
        sub.set_defaults(func=command)

    return parser


def main(args: Optional[List[str]] = None) -> int:
    """
    Main entry point for the CLI.

    Args:
        args: Command line arguments (defaults to sys.argv)

    Returns:
        Exit code (0 success, 2 usage/config error, 3 runtime failure)
    """
    parser = create_main_parser()

    if args is None:
        args = sys.argv[1:]

    if not args:
        parser.print_help()
        return EXIT_USAGE

    parsed_args = parser.parse_args(args)

    if not hasattr(parsed_args, 'func'):
        parser.print_help()
        return EXIT_USAGE

    return parsed_args.func(parsed_args)


if __name__ == "__main__":
    sys.exit(main())
