"""
Analysis products built on the emulators and the simulator: one-parameter
slices through a design point and scatter tables comparing antenna families.
"""

import logging
import time
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..arrays.models import ArrayGeometry, LatticeSpec, ProbabilityProfile
from ..arrays.thinning import generate_mask, mask_to_geometry, upa_geometry
from ..models import DEFAULT_BOUNDS, FEATURE_NAMES, Bounds, InputConfig
from ..network.config import NetworkConfig
from ..network.simulator import DEFAULT_LATTICE_DIMS, DEFAULT_N_ACTIVE, simulate_geometry
from ..rng import draw_seed, generator, mix64
from .search import predict_pair

logger = logging.getLogger(__name__)

SLICE_COLUMNS = ["value", "mean_db", "p5_db"]
COMPARISON_COLUMNS = ["label", "mean_db", "p5_db"]

OPTIMAL_LABEL = "optimal"
RANDOM_LABEL = "random"


def default_references() -> List[Tuple[str, ArrayGeometry]]:
    """8x8 half-wavelength UPA and the 64x1 vertical array at 0.796 wavelengths."""
    return [
        ("upa_8x8", upa_geometry(8, 8, 0.5, 0.5)),
        ("vertical_64x1", upa_geometry(64, 1, 0.5, 0.796)),
    ]


def _axis_index(axis: Union[int, str]) -> int:
    if isinstance(axis, str):
        if axis not in FEATURE_NAMES:
            raise ValueError(f"Unknown parameter '{axis}', expected one of {list(FEATURE_NAMES)}")
        return FEATURE_NAMES.index(axis)
    if not 0 <= axis < len(FEATURE_NAMES):
        raise ValueError(f"Axis {axis} out of range 0..{len(FEATURE_NAMES) - 1}")
    return int(axis)


def slice_scan(models, center: InputConfig, axis: Union[int, str], n_points: int,
               bounds: Bounds = DEFAULT_BOUNDS) -> pd.DataFrame:
    """
    Predictions along one parameter with the other three held at ``center``.

    Values are evenly spaced over the parameter's bounds; ``n_points=1``
    evaluates the center only.

    Returns:
        DataFrame with columns value, mean_db, p5_db

    Raises:
        ValueError: If the axis is unknown, n_points < 1 or center is out of bounds
    """
    index = _axis_index(axis)
    if n_points < 1:
        raise ValueError(f"n_points must be at least 1, got {n_points}")
    problems = bounds.violations(center)
    if problems:
        raise ValueError(f"Slice center is out of bounds: {', '.join(problems)}")

    x0 = center.as_array()
    if n_points == 1:
        values = x0[index:index + 1].copy()
    else:
        values = np.linspace(bounds.low[index], bounds.high[index], n_points)
    x = np.repeat(x0[None, :], values.size, axis=0)
    x[:, index] = values
    means, p5s = predict_pair(models, x)
    return pd.DataFrame({"value": values, "mean_db": means, "p5_db": p5s}, columns=SLICE_COLUMNS)


def family_geometry(config: InputConfig, lattice_dims: Tuple[int, int], n_active: int,
                    mask_seed: int) -> ArrayGeometry:
    """One antenna of the family described by ``config``."""
    n_rows, n_cols = lattice_dims
    lattice = LatticeSpec(n_rows=n_rows, n_cols=n_cols, d_y=config.d_y, d_z=config.d_z)
    profile = ProbabilityProfile(alpha_y=config.alpha_y, alpha_z=config.alpha_z)
    return mask_to_geometry(lattice, generate_mask(lattice, profile, n_active, mask_seed))


def compare_families(optimal: InputConfig, n_optimal_samples: int, n_random_configs: int,
                     cfg: NetworkConfig, n_iter: int = 1000, seed: int = 0,
                     references: Optional[Sequence[Tuple[str, ArrayGeometry]]] = None,
                     bounds: Bounds = DEFAULT_BOUNDS,
                     lattice_dims: Tuple[int, int] = DEFAULT_LATTICE_DIMS,
                     n_active: int = DEFAULT_N_ACTIVE, workers: int = 1,
                     progress: bool = True) -> pd.DataFrame:
    """
    Simulated (mean, p5) of reference arrays, random-config antennas and
    optimal-family antennas, one row per antenna.

    Rows come in the order references, random configs, optimal samples.
    Item i draws its configuration (random rows), mask seed and simulation
    seed from ``generator(mix64(seed, i))``.

    Raises:
        ValueError: If n_optimal_samples < 1 or n_random_configs < 0
    """
    if n_optimal_samples < 1:
        raise ValueError(f"n_optimal_samples must be at least 1, got {n_optimal_samples}")
    if n_random_configs < 0:
        raise ValueError(f"n_random_configs must be non-negative, got {n_random_configs}")
    references = default_references() if references is None else list(references)

    start_time = time.time()
    items: List[Tuple[str, Union[ArrayGeometry, InputConfig, None]]] = []
    items.extend(references)
    items.extend((RANDOM_LABEL, None) for _ in range(n_random_configs))
    items.extend((OPTIMAL_LABEL, optimal) for _ in range(n_optimal_samples))

    rows = []
    for i, (label, item) in enumerate(tqdm(items, desc="Simulating antennas", disable=not progress)):
        rng = generator(mix64(seed, i))
        if isinstance(item, ArrayGeometry):
            geometry = item
        else:
            config = item if item is not None else InputConfig.from_array(bounds.sample(rng, 1)[0])
            geometry = family_geometry(config, lattice_dims, n_active, draw_seed(rng))
        stats = simulate_geometry(geometry, cfg, n_iter=n_iter, seed=draw_seed(rng), workers=workers)
        rows.append({"label": label, "mean_db": stats.mean_db, "p5_db": stats.p5_db})

    logger.info(f"Compared {len(items)} antennas in {time.time() - start_time:.2f} seconds")
    return pd.DataFrame(rows, columns=COMPARISON_COLUMNS)


def write_table(frame: pd.DataFrame, path: str) -> None:
    frame.to_csv(path, index=False, lineterminator='\n')
    logger.info(f"Table saved to {path}")


def read_table(path: str, columns: Sequence[str]) -> pd.DataFrame:
    frame = pd.read_csv(path, float_precision='round_trip')
    missing = [c for c in columns if c not in frame.columns]
    if missing:
        raise ValueError(f"Table {path} is missing columns: {missing}")
    return frame
