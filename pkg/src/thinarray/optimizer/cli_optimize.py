"""
Command-line interface for optimization and its analysis products.
"""

import argparse
import sys

from ..arrays.cli_arrays import add_design_arguments, check_array_options, design_from_args
from ..emulator.models import EmulatorPair
from ..emulator.persistence import load_model
from ..manifest import RunManifest, manifest_path
from ..models import FEATURE_NAMES, InputConfig
from ..network.config import load_network_config
from ..runtime import (EXIT_OK, EXIT_RUNTIME, UsageError, add_array_arguments, add_run_arguments,
                       prepare_output, report_failure, resolve_threads, setup_logging)
from .analysis import compare_families, slice_scan, write_table
from .search import DEFAULT_BUDGET, DEFAULT_THRESHOLD_DB, optimize, read_result, write_result


def add_emulator_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model-mean",
        required=True,
        help="Mean-SINR model JSON"
    )
    parser.add_argument(
        "--model-p5",
        required=True,
        help="5th-percentile SINR model JSON"
    )


def load_pair(args: argparse.Namespace) -> EmulatorPair:
    mean_model = load_model(args.model_mean)
    p5_model = load_model(args.model_p5)
    if mean_model.target != "mean" or p5_model.target != "p5":
        raise UsageError(
            f"Expected a mean model and a p5 model, got '{mean_model.target}' and '{p5_model.target}'"
        )
    return EmulatorPair(mean=mean_model, p5=p5_model)


def center_from_args(args: argparse.Namespace) -> InputConfig:
    """Design point from --result when given, otherwise from the design flags."""
    if args.result:
        return read_result(args.result).best_input
    return design_from_args(args)


def create_optimize_parser() -> argparse.ArgumentParser:
    """Create argument parser for optimize command."""
    parser = argparse.ArgumentParser(
        description="Maximize predicted mean SINR subject to a 5th-percentile SINR floor",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray optimize --model-mean models/mean.json --model-p5 models/p5.json --out results/optimum.json
  thinarray optimize --model-mean m.json --model-p5 p.json --constraint-db 4 --budget 20000 --seed 3 --out opt.json
        """
    )
    add_emulator_arguments(parser)
    parser.add_argument(
        "--constraint-db",
        type=float,
        default=DEFAULT_THRESHOLD_DB,
        help="Required predicted 5th-percentile SINR in dB (default: 6)"
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DEFAULT_BUDGET,
        help="Emulator evaluations (default: 100000)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output result JSON"
    )
    add_run_arguments(parser)
    return parser


def optimize_command(args: argparse.Namespace) -> int:
    """
    Execute the optimize command.

    Returns:
        Exit code (0 success, 2 usage error, 3 runtime failure)
    """
    setup_logging(args.verbose)
    try:
        resolve_threads(args.threads)
        if args.budget < 1:
            raise UsageError(f"--budget must be at least 1, got {args.budget}")
        models = load_pair(args)
        prepare_output(args.out)
        manifest = RunManifest.from_args("optimize", args)

        print(f"🎯 Constraint: predicted SINR5 > {args.constraint_db:g} dB, budget {args.budget}")
        result = optimize(models, bounds=models.mean.bounds, threshold_db=args.constraint_db,
                          budget=args.budget, seed=args.seed)
        write_result(result, args.out, manifest=manifest_path(args.out).name)
        manifest.write(args.out)

        best = result.best_input
        status = "✅ Feasible optimum" if result.feasible else "⚠️  No feasible point; least violation"
        print(f"\n{status}: d_y={best.d_y:.3f} d_z={best.d_z:.3f} "
              f"alpha_y={best.alpha_y:.3f} alpha_z={best.alpha_z:.3f}")
        print(f"   predicted mean {result.predicted_mean_db:.2f} dB, p5 {result.predicted_p5_db:.2f} dB")
        print(f"📄 Result saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Optimization interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_slices_parser() -> argparse.ArgumentParser:
    """Create argument parser for slices command."""
    parser = argparse.ArgumentParser(
        description="Emulator predictions along one parameter through a design point",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray slices --model-mean m.json --model-p5 p.json --result opt.json --axis alpha_z --out slice_az.csv
  thinarray slices --model-mean m.json --model-p5 p.json --d-y 0.8 --axis d_z --n-points 101 --out slice.csv
        """
    )
    add_emulator_arguments(parser)
    parser.add_argument(
        "--result",
        help="Optimization result whose best input is the center"
    )
    add_design_arguments(parser)
    parser.add_argument(
        "--axis",
        choices=list(FEATURE_NAMES),
        required=True,
        help="Parameter to scan"
    )
    parser.add_argument(
        "--n-points",
        type=int,
        default=50,
        help="Scan points (default: 50)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output CSV (value,mean_db,p5_db)"
    )
    add_run_arguments(parser, seed=False)
    return parser


def slices_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        resolve_threads(args.threads)
        if args.n_points < 1:
            raise UsageError(f"--n-points must be at least 1, got {args.n_points}")
        models = load_pair(args)
        center = center_from_args(args)
        problems = models.mean.bounds.violations(center)
        if problems:
            raise UsageError(f"Slice center is out of bounds: {', '.join(problems)}")
        prepare_output(args.out)
        manifest = RunManifest.from_args("slices", args)

        frame = slice_scan(models, center, args.axis, args.n_points, bounds=models.mean.bounds)
        write_table(frame, args.out)
        manifest.write(args.out)

        print(f"✅ {len(frame)} points along {args.axis}")
        print(f"📄 Slice saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_compare_parser() -> argparse.ArgumentParser:
    """Create argument parser for compare command."""
    parser = argparse.ArgumentParser(
        description="Simulate reference arrays, random-config antennas and the optimal family",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray compare --result results/optimum.json --n-optimal 30 --n-random 300 --n-iter 2000 --out scatter.csv
  thinarray compare --d-y 0.866 --d-z 0.761 --alpha-y 9.02 --alpha-z 0.2 --n-random 0 --out scatter.csv
        """
    )
    parser.add_argument(
        "--result",
        help="Optimization result whose best input is the optimal family"
    )
    add_design_arguments(parser)
    parser.add_argument(
        "--config",
        help="YAML/JSON scenario overrides (default: built-in scenario)"
    )
    parser.add_argument(
        "--n-optimal",
        type=int,
        default=30,
        help="Optimal-family antennas (default: 30)"
    )
    parser.add_argument(
        "--n-random",
        type=int,
        default=300,
        help="Random-config antennas (default: 300)"
    )
    parser.add_argument(
        "--n-iter",
        type=int,
        default=2000,
        help="Monte Carlo iterations per antenna (default: 2000)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output CSV (label,mean_db,p5_db)"
    )
    add_array_arguments(parser)
    add_run_arguments(parser)
    return parser


def compare_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        workers = resolve_threads(args.threads)
        if args.n_optimal < 1:
            raise UsageError(f"--n-optimal must be at least 1, got {args.n_optimal}")
        if args.n_random < 0:
            raise UsageError(f"--n-random must be non-negative, got {args.n_random}")
        if args.n_iter < 1:
            raise UsageError(f"--n-iter must be at least 1, got {args.n_iter}")
        check_array_options(args.n_rows, args.n_cols, args.n_active)
        cfg = load_network_config(args.config)
        optimal = center_from_args(args)
        prepare_output(args.out)
        manifest = RunManifest.from_args("compare", args, config_digest=cfg.digest())

        print(f"📡 Simulating {args.n_optimal} optimal-family and {args.n_random} random-config antennas")
        frame = compare_families(optimal, args.n_optimal, args.n_random, cfg, n_iter=args.n_iter,
                                 seed=args.seed, lattice_dims=(args.n_rows, args.n_cols),
                                 n_active=args.n_active, workers=workers, progress=not args.verbose)
        write_table(frame, args.out)
        manifest.write(args.out)

        print(frame.groupby("label", sort=False)[["mean_db", "p5_db"]].median().round(2))
        print(f"\n📄 Comparison saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def main() -> int:
    """Entry point for thinarray-optimize: optimize, slices or compare."""
    parser = argparse.ArgumentParser(prog="thinarray-optimize", description="Design optimization tools")
    subparsers = parser.add_subparsers(dest="command", metavar="{optimize,slices,compare}")
    for name, create, command in (
        ("optimize", create_optimize_parser, optimize_command),
        ("slices", create_slices_parser, slices_command),
        ("compare", create_compare_parser, compare_command),
    ):
        sub = subparsers.add_parser(name, parents=[create()], add_help=False)
        sub.set_defaults(func=command)
    args = parser.parse_args()
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
