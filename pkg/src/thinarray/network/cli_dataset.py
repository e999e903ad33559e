"""
Command-line interface for dataset generation and inspection.
"""

import argparse
import sys

from ..arrays.cli_arrays import check_array_options
from ..manifest import RunManifest
from ..runtime import (EXIT_OK, EXIT_RUNTIME, UsageError, add_array_arguments, add_run_arguments,
                       prepare_output, report_failure, resolve_threads, setup_logging)
from .config import load_network_config
from .dataset import generate_dataset, load_dataset, save_dataset


def create_gen_dataset_parser() -> argparse.ArgumentParser:
    """Create argument parser for gen-dataset command."""
    parser = argparse.ArgumentParser(
        description="Simulate SINR statistics for uniformly drawn design points",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray gen-dataset --n-configs 400 --n-iter 1000 --seed 1 --out data/dataset.csv
  thinarray gen-dataset --config scenario.yaml --n-configs 1000 --n-iter 10000 --threads 16 --out data/full.csv
        """
    )
    parser.add_argument(
        "--config",
        help="YAML/JSON scenario overrides (default: built-in scenario)"
    )
    parser.add_argument(
        "--n-configs",
        type=int,
        default=400,
        help="Design points to simulate (default: 400)"
    )
    parser.add_argument(
        "--n-iter",
        type=int,
        default=1000,
        help="Monte Carlo iterations per point (default: 1000)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output dataset CSV"
    )
    add_array_arguments(parser)
    add_run_arguments(parser)
    return parser


def gen_dataset_command(args: argparse.Namespace) -> int:
    """
    Execute the gen-dataset command.

    Returns:
        Exit code (0 success, 2 usage/config error, 3 runtime failure)
    """
    setup_logging(args.verbose)
    try:
        workers = resolve_threads(args.threads)
        if args.n_configs < 1:
            raise UsageError(f"--n-configs must be at least 1, got {args.n_configs}")
        if args.n_iter < 1:
            raise UsageError(f"--n-iter must be at least 1, got {args.n_iter}")
        check_array_options(args.n_rows, args.n_cols, args.n_active)
        cfg = load_network_config(args.config)
        prepare_output(args.out)
        manifest = RunManifest.from_args("gen-dataset", args, config_digest=cfg.digest())

        print(f"📡 Simulating {args.n_configs} configurations x {args.n_iter} iterations")
        dataset = generate_dataset(args.n_configs, args.n_iter, args.seed, cfg,
                                   lattice_dims=(args.n_rows, args.n_cols), n_active=args.n_active,
                                   workers=workers, progress=not args.verbose)
        save_dataset(dataset, args.out)
        manifest.write(args.out)

        print("\n✅ Dataset generated successfully!")
        print(f"📄 Dataset saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Generation interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_describe_parser() -> argparse.ArgumentParser:
    """Create argument parser for describe command."""
    parser = argparse.ArgumentParser(
        description="Correlation matrix of the dataset's inputs and outputs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray describe --dataset data/dataset.csv --out data/correlations.csv
        """
    )
    parser.add_argument(
        "--dataset",
        required=True,
        help="Dataset CSV"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output correlation CSV"
    )
    add_run_arguments(parser, seed=False)
    return parser


def describe_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        resolve_threads(args.threads)
        dataset = load_dataset(args.dataset)
        prepare_output(args.out)
        manifest = RunManifest.from_args("describe", args)

        correlations = dataset.correlations()
        correlations.to_csv(args.out, index_label="variable", lineterminator='\n')
        manifest.write(args.out)

        print(f"✅ {len(dataset)} rows described")
        print(correlations.loc[["d_y", "d_z", "alpha_y", "alpha_z"], ["sinr_mean_db", "sinr_p5_db"]].round(3))
        print(f"📄 Correlations saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def main() -> int:
    """Entry point for thinarray-dataset: gen-dataset or describe."""
    parser = argparse.ArgumentParser(prog="thinarray-dataset", description="Simulated dataset tools")
    subparsers = parser.add_subparsers(dest="command", metavar="{gen-dataset,describe}")
    generate = subparsers.add_parser("gen-dataset", parents=[create_gen_dataset_parser()], add_help=False)
    generate.set_defaults(func=gen_dataset_command)
    describe = subparsers.add_parser("describe", parents=[create_describe_parser()], add_help=False)
    describe.set_defaults(func=describe_command)
    args = parser.parse_args()
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
