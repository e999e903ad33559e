"""
Simulated datasets: generation, CSV persistence and a correlation summary.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Iterable, List, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..models import DEFAULT_BOUNDS, FEATURE_NAMES, Bounds, InputConfig, SinrStats
from ..rng import generator, mix64
from .config import NetworkConfig
from .simulator import DEFAULT_LATTICE_DIMS, DEFAULT_N_ACTIVE, simulate

logger = logging.getLogger(__name__)

DATASET_COLUMNS = ["seed", "n_iter", "d_y", "d_z", "alpha_y", "alpha_z", "sinr_mean_db", "sinr_p5_db"]
TARGET_COLUMNS = {"mean": "sinr_mean_db", "p5": "sinr_p5_db"}


@dataclass(frozen=True)
class DatasetRow:
    """One simulated design point with its provenance"""
    input: InputConfig
    output: SinrStats
    n_iter: int
    seed: int


@dataclass
class Dataset:
    """Rows of (InputConfig, SinrStats, n_iter, seed) used to train emulators"""
    rows: List[DatasetRow] = field(default_factory=list)
    bounds: Bounds = DEFAULT_BOUNDS

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        """
        Raises:
            ValueError: If an input is out of bounds or a (seed, input) pair repeats
        """
        seen = set()
        for i, row in enumerate(self.rows):
            problems = self.bounds.violations(row.input)
            if problems:
                raise ValueError(f"Dataset row {i} is out of bounds: {', '.join(problems)}")
            key = (row.seed, row.input)
            if key in seen:
                raise ValueError(f"Dataset row {i} duplicates seed {row.seed} with the same input")
            seen.add(key)

    def append(self, row: DatasetRow) -> None:
        self.rows.append(row)
        try:
            self.validate()
        except ValueError:
            self.rows.pop()
            raise

    def __len__(self) -> int:
        return len(self.rows)

    def features(self) -> np.ndarray:
        """(n, 4) raw input matrix in FEATURE_NAMES order."""
        if not self.rows:
            return np.zeros((0, len(FEATURE_NAMES)))
        return np.array([row.input.as_array() for row in self.rows])

    def targets(self, target: str) -> np.ndarray:
        """Vector of 'mean' or 'p5' SINR outputs."""
        if target == "mean":
            return np.array([row.output.mean_db for row in self.rows], dtype=float)
        if target == "p5":
            return np.array([row.output.p5_db for row in self.rows], dtype=float)
        raise ValueError(f"Unknown target '{target}', expected one of {sorted(TARGET_COLUMNS)}")

    def subset(self, indices: Iterable[int]) -> "Dataset":
        return Dataset([self.rows[i] for i in indices], bounds=self.bounds)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "seed": row.seed,
                    "n_iter": row.n_iter,
                    "d_y": row.input.d_y,
                    "d_z": row.input.d_z,
                    "alpha_y": row.input.alpha_y,
                    "alpha_z": row.input.alpha_z,
                    "sinr_mean_db": row.output.mean_db,
                    "sinr_p5_db": row.output.p5_db,
                }
                for row in self.rows
            ],
            columns=DATASET_COLUMNS,
        )

    def correlations(self) -> pd.DataFrame:
        """Pearson correlation of every input and output column."""
        columns = list(FEATURE_NAMES) + list(TARGET_COLUMNS.values())
        return self.to_frame()[columns].corr(method='pearson')

    @classmethod
    def from_frame(cls, df: pd.DataFrame, bounds: Bounds = DEFAULT_BOUNDS) -> "Dataset":
        missing = [c for c in DATASET_COLUMNS if c not in df.columns]
        if missing:
            raise ValueError(f"Dataset is missing columns: {missing}")
        rows = []
        for record in df.to_dict('records'):
            rows.append(DatasetRow(
                input=InputConfig(d_y=float(record["d_y"]), d_z=float(record["d_z"]),
                                  alpha_y=float(record["alpha_y"]), alpha_z=float(record["alpha_z"])),
                output=SinrStats(mean_db=float(record["sinr_mean_db"]), p5_db=float(record["sinr_p5_db"]),
                                 n_samples=int(record["n_iter"])),
                n_iter=int(record["n_iter"]),
                seed=int(record["seed"]),
            ))
        return cls(rows, bounds=bounds)


def save_dataset(dataset: Dataset, path: str) -> None:
    """
    Write the dataset CSV.

    Floats are rendered with their shortest round-trip representation.
    """
    df = dataset.to_frame()
    df.to_csv(path, index=False, float_format=None, lineterminator='\n')
    logger.info(f"Dataset saved to {path} with {len(df)} rows")


def load_dataset(path: str, bounds: Bounds = DEFAULT_BOUNDS) -> Dataset:
    """
    Read a dataset CSV written by ``save_dataset``.

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: On missing columns, out-of-bounds rows or duplicates
    """
    df = pd.read_csv(path, float_precision='round_trip',
                     dtype={"seed": "uint64", "n_iter": "int64"})
    return Dataset.from_frame(df, bounds=bounds)


def draw_input(bounds: Bounds, seed: int) -> InputConfig:
    """Uniform design point in ``bounds`` from ``generator(seed)``."""
    return InputConfig.from_array(bounds.sample(generator(seed), 1)[0])


def generate_dataset(n_configs: int, n_iter: int, seed: int, cfg: NetworkConfig,
                     bounds: Bounds = DEFAULT_BOUNDS,
                     lattice_dims: Tuple[int, int] = DEFAULT_LATTICE_DIMS,
                     n_active: int = DEFAULT_N_ACTIVE, workers: int = 1,
                     progress: bool = True) -> Dataset:
    """
    Simulate ``n_configs`` uniformly drawn design points.

    Row j uses seed ``mix64(seed, j)`` both to draw its input and to seed
    its simulation, so rows are reproducible one by one.
    """
    if n_configs < 1:
        raise ValueError(f"n_configs must be at least 1, got {n_configs}")
    if n_iter < 1:
        raise ValueError(f"n_iter must be at least 1, got {n_iter}")

    logger.info(f"Generating {n_configs} configurations x {n_iter} iterations (seed {seed})")
    start_time = time.time()

    dataset = Dataset(bounds=bounds)
    for j in tqdm(range(n_configs), desc="Simulating configurations", disable=not progress):
        row_seed = mix64(seed, j)
        config = draw_input(bounds, row_seed)
        stats = simulate(config, cfg, lattice_dims=lattice_dims, n_active=n_active,
                         n_iter=n_iter, seed=row_seed, workers=workers)
        dataset.rows.append(DatasetRow(input=config, output=stats, n_iter=n_iter, seed=row_seed))

    dataset.validate()
    logger.info(f"Dataset generated in {time.time() - start_time:.2f} seconds")
    return dataset

