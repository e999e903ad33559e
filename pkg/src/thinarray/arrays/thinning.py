"""
Randomized thinning of a rectangular lattice.

Masks are generated on the top-left quadrant and mirrored to the other
three. Each eligible quadrant cell gets the key ``log u + log f(dy, dz)``
with ``u`` uniform in (0, 1]; the ``n_active / 4`` cells with the largest
keys are switched on. Keys stay in the log domain so very steep profiles
never underflow into ties.
"""

import logging
import time
from functools import partial
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from ..rng import generator, mix64
from ..runtime import ordered_map
from .models import ActivationMask, ArrayGeometry, LatticeSpec, ProbabilityProfile

logger = logging.getLogger(__name__)


def log_profile_value(profile: ProbabilityProfile, delta_y, delta_z):
    """
    Natural log of the probability profile at the given center distances.

    Args:
        profile: Decay rates per wavelength
        delta_y: Horizontal distance(s) from the lattice center, wavelengths
        delta_z: Vertical distance(s) from the lattice center, wavelengths

    Returns:
        ``-alpha_y * delta_y - alpha_z * delta_z`` (scalar or array)
    """
    if np.any(np.asarray(delta_y) < 0) or np.any(np.asarray(delta_z) < 0):
        raise ValueError("Profile distances must be non-negative")
    return -profile.alpha_y * delta_y - profile.alpha_z * delta_z


def select_top_k(keys: np.ndarray, k: int) -> np.ndarray:
    """
    Indices of the ``k`` largest keys; ties go to the lower index.

    Returned indices are sorted ascending.
    """
    keys = np.asarray(keys, dtype=float).ravel()
    order = np.lexsort((np.arange(keys.size), -keys))
    return np.sort(order[:k])


def mirror_quadrant(quadrant: np.ndarray, shape) -> np.ndarray:
    """Place a top-left quadrant selection into a full grid and mirror it."""
    n_rows, n_cols = shape
    q_rows, q_cols = quadrant.shape
    grid = np.zeros(shape, dtype=bool)
    grid[:q_rows, :q_cols] = quadrant
    grid[:q_rows, n_cols - q_cols:] |= quadrant[:, ::-1]
    grid[n_rows - q_rows:, :] |= grid[:q_rows, :][::-1, :]
    return grid


def generate_mask(lattice: LatticeSpec, profile: ProbabilityProfile,
                  n_active: int, seed: int) -> ActivationMask:
    """
    Draw one thinned activation mask.

    Args:
        lattice: Lattice dimensions and spacings
        profile: Exponential decay rates
        n_active: Total active elements, a positive multiple of 4
        seed: 64-bit seed of the uniform stream

    Returns:
        Mirror-symmetric ActivationMask with exactly ``n_active`` cells on

    Raises:
        ValueError: If n_active is not a positive multiple of 4 or does not fit
    """
    if n_active < 4 or n_active % 4 != 0:
        raise ValueError(f"n_active must be a positive multiple of 4, got {n_active}")

    per_quadrant = n_active // 4
    q_rows, q_cols = lattice.quadrant_shape
    eligible = q_rows * q_cols
    if per_quadrant > eligible:
        raise ValueError(
            f"n_active/4 = {per_quadrant} exceeds the {eligible} eligible quadrant cells "
            f"of a {lattice.n_rows}x{lattice.n_cols} lattice"
        )

    delta_y, delta_z = lattice.quadrant_offsets()
    # u in (0, 1], consumed in row-major quadrant order
    u = 1.0 - generator(seed).random(eligible)
    keys = np.log(u) + log_profile_value(profile, delta_y, delta_z).ravel()

    chosen = select_top_k(keys, per_quadrant)
    quadrant = np.zeros(eligible, dtype=bool)
    quadrant[chosen] = True

    return ActivationMask(mirror_quadrant(quadrant.reshape(q_rows, q_cols), lattice.shape))


def mask_to_geometry(lattice: LatticeSpec, mask: ActivationMask) -> ArrayGeometry:
    """
    Physical positions of the active cells, row-major order.

    Cell (r, c) maps to y = (c - (n_cols-1)/2) * d_y, z = (r - (n_rows-1)/2) * d_z.
    """
    if mask.shape != lattice.shape:
        raise ValueError(f"Mask shape {mask.shape} does not match lattice {lattice.shape}")
    rows, cols = np.nonzero(mask.grid)
    y = (cols - (lattice.n_cols - 1) / 2.0) * lattice.d_y
    z = (rows - (lattice.n_rows - 1) / 2.0) * lattice.d_z
    return ArrayGeometry(np.column_stack([y, z]))


def upa_geometry(n_rows: int, n_cols: int, d_y: float, d_z: float) -> ArrayGeometry:
    """Full regular grid, centered at the origin."""
    lattice = LatticeSpec(n_rows=n_rows, n_cols=n_cols, d_y=d_y, d_z=d_z)
    return mask_to_geometry(lattice, ActivationMask(np.ones(lattice.shape, dtype=bool)))


def _sample_mask_grid(index: int, lattice: LatticeSpec, profile: ProbabilityProfile,
                      n_active: int, seed: int) -> np.ndarray:
    return generate_mask(lattice, profile, n_active, mix64(seed, index)).grid


def activation_probability_map(lattice: LatticeSpec, profile: ProbabilityProfile,
                               n_active: int, n_samples: int, seed: int,
                               workers: int = 1) -> np.ndarray:
    """
    Per-cell activation frequency over ``n_samples`` generated masks.

    Sample i uses seed ``mix64(seed, i)``; counts are reduced in sample order.

    Returns:
        (n_rows, n_cols) float matrix with entries in [0, 1]
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be at least 1, got {n_samples}")

    start_time = time.time()
    sample = partial(_sample_mask_grid, lattice=lattice, profile=profile,
                     n_active=n_active, seed=seed)
    counts = np.zeros(lattice.shape, dtype=np.int64)
    for grid in ordered_map(sample, range(n_samples), workers):
        counts += grid

    logger.debug(f"Activation map from {n_samples} masks in {time.time() - start_time:.2f} seconds")
    return counts / float(n_samples)


def mask_to_text(mask: ActivationMask) -> str:
    """One lattice row per line of 0/1 characters, row 0 first."""
    return "\n".join("".join('1' if cell else '0' for cell in row) for row in mask.grid) + "\n"


def write_mask_text(mask: ActivationMask, path: str) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(mask_to_text(mask))


def read_mask_text(path: str) -> ActivationMask:
    """
    Load a 0/1 text mask.

    Raises:
        ValueError: If rows differ in length or contain other characters
    """
    lines = [line.strip() for line in Path(path).read_text(encoding='utf-8').splitlines() if line.strip()]
    if not lines:
        raise ValueError(f"Mask file is empty: {path}")
    width = len(lines[0])
    for i, line in enumerate(lines):
        if len(line) != width:
            raise ValueError(f"Mask row {i} has {len(line)} cells, expected {width}")
        if set(line) - {'0', '1'}:
            raise ValueError(f"Mask row {i} contains characters other than 0/1")
    return ActivationMask(np.array([[c == '1' for c in line] for line in lines], dtype=bool))


def activation_map_frame(probabilities: np.ndarray) -> pd.DataFrame:
    n_rows, n_cols = probabilities.shape
    rows, cols = np.meshgrid(np.arange(n_rows), np.arange(n_cols), indexing='ij')
    return pd.DataFrame({
        "row": rows.ravel(),
        "col": cols.ravel(),
        "probability": probabilities.ravel(),
    })


def write_activation_map(probabilities: np.ndarray, path: str) -> None:
    """CSV ``row,col,probability`` with six decimal digits."""
    activation_map_frame(probabilities).to_csv(path, index=False, float_format='%.6f')


def read_activation_map(path: str, shape: Optional[tuple] = None) -> np.ndarray:
    df = pd.read_csv(path)
    missing = {"row", "col", "probability"} - set(df.columns)
    if missing:
        raise ValueError(f"Activation map is missing columns: {sorted(missing)}")
    if shape is None:
        shape = (int(df["row"].max()) + 1, int(df["col"].max()) + 1)
    probabilities = np.zeros(shape, dtype=float)
    probabilities[df["row"].to_numpy(), df["col"].to_numpy()] = df["probability"].to_numpy()
    return probabilities
