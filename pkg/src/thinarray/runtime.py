"""
Process-level plumbing shared by the command-line tools.

Logging setup, worker-count resolution, order-preserving parallel map,
output path preparation and the exit-code convention live here.
"""

import argparse
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV_VAR = "THINARRAY_THREADS"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_RUNTIME = 3

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Raised when a command's inputs are rejected before any work starts."""


def setup_logging(verbose: bool = False) -> None:
    """Setup logging configuration."""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s'
    )


def resolve_threads(threads: Optional[int] = None) -> int:
    """
    Resolve the worker count.

    Args:
        threads: Explicit value (from ``--threads``); takes precedence

    Returns:
        Worker count >= 1 (flag, then THINARRAY_THREADS, then 1)

    Raises:
        UsageError: If the flag or environment value is not a positive integer
    """
    if threads is None:
        raw = os.environ.get(THREADS_ENV_VAR)
        if raw is None or not raw.strip():
            return 1
        try:
            threads = int(raw)
        except ValueError:
            raise UsageError(f"{THREADS_ENV_VAR} must be an integer, got '{raw}'")
    if threads < 1:
        raise UsageError(f"Thread count must be at least 1, got {threads}")
    return threads


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, possibly in parallel, keeping input order.

    Results are collected by item position, so the output is identical for
    any worker count as long as ``func`` is deterministic per item.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, items))


def prepare_output(path: str) -> Path:
    """
    Make sure ``path`` can be written.

    Creates missing parent directories and checks the location by opening the
    file for append (which leaves existing content untouched).

    Raises:
        UsageError: If the path cannot be written
    """
    output = Path(path)
    try:
        if output.parent and not output.parent.exists():
            output.parent.mkdir(parents=True, exist_ok=True)
        if output.is_dir():
            raise UsageError(f"Output path is a directory: {path}")
        existed = output.exists()
        with open(output, 'a', encoding='utf-8'):
            pass
        if not existed:
            output.unlink()
    except OSError as e:
        raise UsageError(f"Cannot write output file '{path}': {e}")
    return output


def exit_code_for(error: BaseException) -> int:
    """Map an exception raised by a command to its exit code."""
    # Imported lazily: runtime is imported by the modules that define these.
    from .network.config import ConfigError
    from .emulator.persistence import ModelFormatError

    if isinstance(error, (UsageError, ConfigError, ModelFormatError, FileNotFoundError)):
        return EXIT_USAGE
    return EXIT_RUNTIME


def report_failure(error: BaseException) -> int:
    """Print a command failure and return its exit code."""
    code = exit_code_for(error)
    logger.error(f"{type(error).__name__}: {error}")
    print(f"\n❌ Error: {error}")
    return code


def add_run_arguments(parser: argparse.ArgumentParser, seed: bool = True) -> None:
    """--seed, --threads and --verbose, shared by every command."""
    if seed:
        parser.add_argument(
            "--seed",
            type=int,
            default=0,
            help="Master random seed (default: 0)"
        )
    parser.add_argument(
        "--threads",
        type=int,
        help=f"Worker threads; falls back to {THREADS_ENV_VAR}, then 1. Never changes results."
    )
    parser.add_argument(
        "--verbose", "-v",
        action="store_true",
        help="Enable verbose logging"
    )


def add_array_arguments(parser: argparse.ArgumentParser) -> None:
    """Lattice size and active element count, shared by commands that build arrays."""
    parser.add_argument(
        "--n-rows",
        type=int,
        default=100,
        help="Lattice rows (default: 100)"
    )
    parser.add_argument(
        "--n-cols",
        type=int,
        default=99,
        help="Lattice columns (default: 99)"
    )
    parser.add_argument(
        "--n-active",
        type=int,
        default=64,
        help="Active elements, a multiple of 4 (default: 64)"
    )
