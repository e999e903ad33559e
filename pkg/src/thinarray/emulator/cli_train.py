"""
Command-line interface for emulator training and learning curves.
"""

import argparse
import sys
from typing import List

from ..manifest import RunManifest, manifest_path
from ..network.dataset import load_dataset
from ..runtime import (EXIT_OK, EXIT_RUNTIME, UsageError, add_run_arguments, prepare_output,
                       report_failure, resolve_threads, setup_logging)
from .models import ModelSpec, train_model
from .persistence import save_model
from .validation import DEFAULT_TRAINING_SIZES, cross_validate, max_training_size, write_learning_curve


def parse_sizes(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Sizes must be a comma-separated list of integers, got '{text}'")


def add_model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--model",
        choices=["ridge", "rf", "knn"],
        default="rf",
        help="Regressor: ridge, rf (random forest) or knn (default: rf)"
    )
    parser.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=1.0,
        help="Ridge regularization on standardized features (default: 1.0)"
    )
    parser.add_argument(
        "--n-trees",
        type=int,
        default=200,
        help="Forest size (default: 200)"
    )
    parser.add_argument(
        "--min-leaf",
        type=int,
        default=2,
        help="Minimum rows per forest leaf (default: 2)"
    )
    parser.add_argument(
        "--no-bootstrap",
        action="store_true",
        help="Grow every tree on the full training set"
    )
    parser.add_argument(
        "--k",
        type=int,
        default=5,
        help="Neighbours for knn (default: 5)"
    )


def spec_from_args(args: argparse.Namespace) -> ModelSpec:
    """
    Raises:
        UsageError: If a hyper-parameter is out of range
    """
    if args.model == "ridge":
        if args.lam < 0:
            raise UsageError(f"--lambda must be non-negative, got {args.lam}")
        return ModelSpec("ridge", {"lam": args.lam})
    if args.model == "knn":
        if args.k < 1:
            raise UsageError(f"--k must be at least 1, got {args.k}")
        return ModelSpec("knn", {"k": args.k})
    if args.n_trees < 1:
        raise UsageError(f"--n-trees must be at least 1, got {args.n_trees}")
    if args.min_leaf < 1:
        raise UsageError(f"--min-leaf must be at least 1, got {args.min_leaf}")
    return ModelSpec("random_forest", {"n_trees": args.n_trees, "min_leaf": args.min_leaf,
                                       "bootstrap": not args.no_bootstrap})


def create_train_parser() -> argparse.ArgumentParser:
    """Create argument parser for train command."""
    parser = argparse.ArgumentParser(
        description="Train an emulator of one simulator output",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray train --dataset data/dataset.csv --model rf --target mean --seed 1 --out models/mean.json
  thinarray train --dataset data/dataset.csv --model rf --target p5 --seed 1 --out models/p5.json
  thinarray train --dataset data/dataset.csv --model ridge --lambda 0.1 --out models/ridge_mean.json
        """
    )
    parser.add_argument(
        "--dataset",
        required=True,
        help="Dataset CSV"
    )
    parser.add_argument(
        "--target",
        choices=["mean", "p5"],
        default="mean",
        help="Output to emulate: mean SINR or 5th percentile (default: mean)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output model JSON"
    )
    add_model_arguments(parser)
    add_run_arguments(parser)
    return parser


def train_command(args: argparse.Namespace) -> int:
    """
    Execute the train command.

    Returns:
        Exit code (0 success, 2 usage error, 3 runtime failure)
    """
    setup_logging(args.verbose)
    try:
        workers = resolve_threads(args.threads)
        spec = spec_from_args(args)
        dataset = load_dataset(args.dataset)
        prepare_output(args.out)
        manifest = RunManifest.from_args("train", args)

        print(f"🌲 Training {spec.kind} on {len(dataset)} rows ({args.target})")
        model = train_model(dataset, spec, target=args.target, seed=args.seed, workers=workers)
        save_model(model, args.out, manifest=manifest_path(args.out).name)
        manifest.write(args.out)

        print("\n✅ Training completed successfully!")
        print(f"📄 Model saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Training interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_learning_curve_parser() -> argparse.ArgumentParser:
    """Create argument parser for learning-curve command."""
    parser = argparse.ArgumentParser(
        description="Cross-validated nRMSE at increasing training sizes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray learning-curve --dataset data/dataset.csv --model rf --out results/curve_rf.csv
  thinarray learning-curve --dataset data/dataset.csv --model ridge --sizes 50,100,200 --folds 5 --out curve.csv
        """
    )
    parser.add_argument(
        "--dataset",
        required=True,
        help="Dataset CSV"
    )
    parser.add_argument(
        "--sizes",
        type=parse_sizes,
        default=list(DEFAULT_TRAINING_SIZES),
        help="Comma-separated training sizes (default: 100,200,...,800)"
    )
    parser.add_argument(
        "--folds",
        type=int,
        default=5,
        help="Cross-validation folds (default: 5)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output CSV (size,output,nrmse_mean,nrmse_std)"
    )
    add_model_arguments(parser)
    add_run_arguments(parser)
    return parser


def learning_curve_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        workers = resolve_threads(args.threads)
        spec = spec_from_args(args)
        if args.folds < 2:
            raise UsageError(f"--folds must be at least 2, got {args.folds}")
        dataset = load_dataset(args.dataset)
        if len(dataset) < args.folds:
            raise UsageError(f"Dataset has {len(dataset)} rows, fewer than {args.folds} folds")
        limit = max_training_size(len(dataset), args.folds)
        too_large = [s for s in args.sizes if s > limit]
        if too_large:
            raise UsageError(
                f"Training sizes {too_large} exceed the {limit} rows available per training split "
                f"({len(dataset)} rows, {args.folds} folds)"
            )
        prepare_output(args.out)
        manifest = RunManifest.from_args("learning-curve", args)

        print(f"📈 Learning curve of {spec.kind} over sizes {args.sizes}")
        report = cross_validate(dataset, spec, folds=args.folds, training_sizes=args.sizes,
                                seed=args.seed, workers=workers, progress=not args.verbose)
        write_learning_curve(report, args.out)
        manifest.write(args.out)

        print(report.to_frame().to_string(index=False))
        print(f"\n📄 Learning curve saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def main() -> int:
    """Entry point for thinarray-train: train or learning-curve."""
    parser = argparse.ArgumentParser(prog="thinarray-train", description="Emulator training tools")
    subparsers = parser.add_subparsers(dest="command", metavar="{train,learning-curve}")
    train = subparsers.add_parser("train", parents=[create_train_parser()], add_help=False)
    train.set_defaults(func=train_command)
    curve = subparsers.add_parser("learning-curve", parents=[create_learning_curve_parser()], add_help=False)
    curve.set_defaults(func=learning_curve_command)
    args = parser.parse_args()
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
