"""
Command-line tools for single design points: activation maps, mask export
and radiation patterns.
"""

import argparse
import sys

import numpy as np

from ..manifest import RunManifest
from ..models import InputConfig
from ..runtime import (EXIT_OK, EXIT_RUNTIME, UsageError, add_array_arguments, add_run_arguments,
                       prepare_output, report_failure, resolve_threads, setup_logging)
from .beam import conjugate_weights, pattern_grid, write_pattern
from .models import Direction, LatticeSpec, ProbabilityProfile
from .thinning import (activation_probability_map, generate_mask, mask_to_geometry, read_mask_text,
                       write_activation_map, write_mask_text)


def add_design_arguments(parser: argparse.ArgumentParser) -> None:
    """One InputConfig as --d-y/--d-z/--alpha-y/--alpha-z."""
    parser.add_argument(
        "--d-y",
        type=float,
        default=0.5,
        help="Horizontal spacing in wavelengths (default: 0.5)"
    )
    parser.add_argument(
        "--d-z",
        type=float,
        default=0.5,
        help="Vertical spacing in wavelengths (default: 0.5)"
    )
    parser.add_argument(
        "--alpha-y",
        type=float,
        default=0.0,
        help="Horizontal decay rate (default: 0)"
    )
    parser.add_argument(
        "--alpha-z",
        type=float,
        default=0.0,
        help="Vertical decay rate (default: 0)"
    )


def design_from_args(args: argparse.Namespace) -> InputConfig:
    return InputConfig(d_y=args.d_y, d_z=args.d_z, alpha_y=args.alpha_y, alpha_z=args.alpha_z)


def check_array_options(n_rows: int, n_cols: int, n_active: int) -> None:
    """
    Reject lattice / active-count combinations before any work starts.

    Raises:
        UsageError: If the lattice is invalid or n_active cannot be placed
    """
    try:
        lattice = LatticeSpec(n_rows=n_rows, n_cols=n_cols, d_y=0.5, d_z=0.5)
        generate_mask(lattice, ProbabilityProfile(0.0, 0.0), n_active, 0)
    except ValueError as e:
        raise UsageError(str(e))


def _lattice_and_profile(args: argparse.Namespace):
    check_array_options(args.n_rows, args.n_cols, args.n_active)
    try:
        config = design_from_args(args)
        lattice = LatticeSpec(n_rows=args.n_rows, n_cols=args.n_cols, d_y=config.d_y, d_z=config.d_z)
        profile = ProbabilityProfile(alpha_y=config.alpha_y, alpha_z=config.alpha_z)
    except ValueError as e:
        raise UsageError(str(e))
    return lattice, profile


def create_activation_map_parser() -> argparse.ArgumentParser:
    """Create argument parser for activation-map command."""
    parser = argparse.ArgumentParser(
        description="Per-element activation frequency of one antenna family",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray activation-map --d-y 0.866 --d-z 0.761 --alpha-y 9.02 --alpha-z 0.2 --out map.csv
  thinarray activation-map --alpha-y 3 --alpha-z 3 --n-samples 5000 --threads 8 --out map.csv
        """
    )
    add_design_arguments(parser)
    add_array_arguments(parser)
    parser.add_argument(
        "--n-samples",
        type=int,
        default=1000,
        help="Masks to average (default: 1000)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output CSV (row,col,probability)"
    )
    add_run_arguments(parser)
    return parser


def activation_map_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        workers = resolve_threads(args.threads)
        lattice, profile = _lattice_and_profile(args)
        if args.n_samples < 1:
            raise UsageError(f"--n-samples must be at least 1, got {args.n_samples}")
        prepare_output(args.out)
        manifest = RunManifest.from_args("activation-map", args)

        probabilities = activation_probability_map(lattice, profile, args.n_active, args.n_samples,
                                                   args.seed, workers=workers)
        write_activation_map(probabilities, args.out)
        manifest.write(args.out)

        print(f"✅ Activation map from {args.n_samples} masks")
        print(f"📄 Map saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_mask_parser() -> argparse.ArgumentParser:
    """Create argument parser for mask command."""
    parser = argparse.ArgumentParser(
        description="Draw one thinned mask and write it as 0/1 text",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray mask --alpha-y 9 --alpha-z 0.2 --seed 7 --out mask.txt
        """
    )
    add_design_arguments(parser)
    add_array_arguments(parser)
    parser.add_argument(
        "--out",
        required=True,
        help="Output text file"
    )
    add_run_arguments(parser)
    return parser


def mask_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        resolve_threads(args.threads)
        lattice, profile = _lattice_and_profile(args)
        prepare_output(args.out)
        manifest = RunManifest.from_args("mask", args)

        mask = generate_mask(lattice, profile, args.n_active, args.seed)
        write_mask_text(mask, args.out)
        manifest.write(args.out)

        print(f"✅ Mask with {mask.n_active} active elements")
        print(f"📄 Mask saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def create_pattern_parser() -> argparse.ArgumentParser:
    """Create argument parser for pattern command."""
    parser = argparse.ArgumentParser(
        description="Radiation pattern of one antenna under conjugate beamforming",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  thinarray pattern --mask mask.txt --d-y 0.866 --d-z 0.761 --out pattern.csv
  thinarray pattern --alpha-y 9 --alpha-z 0.2 --steer-theta 100 --steer-phi 20 --out pattern.csv
        """
    )
    parser.add_argument(
        "--mask",
        help="0/1 mask file (default: draw one from the design point)"
    )
    add_design_arguments(parser)
    add_array_arguments(parser)
    parser.add_argument(
        "--steer-theta",
        type=float,
        default=90.0,
        help="Steering zenith in degrees (default: 90)"
    )
    parser.add_argument(
        "--steer-phi",
        type=float,
        default=0.0,
        help="Steering azimuth in degrees (default: 0)"
    )
    parser.add_argument(
        "--step",
        type=float,
        default=1.0,
        help="Angular grid step in degrees (default: 1)"
    )
    parser.add_argument(
        "--out",
        required=True,
        help="Output CSV (theta_deg,phi_deg,gain_db)"
    )
    add_run_arguments(parser)
    return parser


def pattern_command(args: argparse.Namespace) -> int:
    setup_logging(args.verbose)
    try:
        resolve_threads(args.threads)
        if args.step <= 0:
            raise UsageError(f"--step must be positive, got {args.step}")
        if args.mask:
            mask = read_mask_text(args.mask)
            args.n_rows, args.n_cols = mask.shape
            try:
                lattice = LatticeSpec(n_rows=args.n_rows, n_cols=args.n_cols, d_y=args.d_y, d_z=args.d_z)
            except ValueError as e:
                raise UsageError(str(e))
        else:
            lattice, profile = _lattice_and_profile(args)
            mask = generate_mask(lattice, profile, args.n_active, args.seed)
        try:
            target = Direction.from_degrees(args.steer_theta, args.steer_phi)
        except ValueError as e:
            raise UsageError(str(e))
        prepare_output(args.out)
        manifest = RunManifest.from_args("pattern", args)

        geometry = mask_to_geometry(lattice, mask)
        weights = conjugate_weights(geometry, target)
        thetas = np.arange(0.0, 180.0 + args.step / 2, args.step)
        phis = np.arange(-180.0, 180.0 + args.step / 2, args.step)
        write_pattern(pattern_grid(geometry, weights, thetas, phis), args.out)
        manifest.write(args.out)

        print(f"✅ Pattern of {len(geometry)} elements over {thetas.size}x{phis.size} directions")
        print(f"📄 Pattern saved to: {args.out}")
        return EXIT_OK
    except KeyboardInterrupt:
        print("\n⚠️  Interrupted by user")
        return EXIT_RUNTIME
    except Exception as e:
        return report_failure(e)


def main() -> int:
    """Entry point for thinarray-arrays: activation-map, mask or pattern."""
    parser = argparse.ArgumentParser(prog="thinarray-arrays", description="Thinned array tools")
    subparsers = parser.add_subparsers(dest="command", metavar="{activation-map,mask,pattern}")
    for name, create, command in (
        ("activation-map", create_activation_map_parser, activation_map_command),
        ("mask", create_mask_parser, mask_command),
        ("pattern", create_pattern_parser, pattern_command),
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
