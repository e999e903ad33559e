"""
K-fold cross-validation and learning curves for emulator models.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..network.dataset import Dataset
from ..rng import generator, mix64
from ..runtime import ordered_map
from .metrics import nrmse
from .models import ModelSpec, train_model

logger = logging.getLogger(__name__)

DEFAULT_TRAINING_SIZES = (100, 200, 300, 400, 500, 600, 700, 800)
LEARNING_CURVE_COLUMNS = ["size", "output", "nrmse_mean", "nrmse_std"]


@dataclass(frozen=True, eq=False)
class CvEntry:
    """Scores of one (training size, output) cell across folds"""
    size: int
    output: str
    fold_scores: np.ndarray
    residuals: np.ndarray = field(repr=False)

    @property
    def nrmse_mean(self) -> float:
        return float(np.mean(self.fold_scores))

    @property
    def nrmse_std(self) -> float:
        return float(np.std(self.fold_scores))


@dataclass
class CvReport:
    """Learning-curve results: one entry per (training size, output)"""
    folds: int
    entries: List[CvEntry] = field(default_factory=list)

    @property
    def sizes(self) -> List[int]:
        return sorted({entry.size for entry in self.entries})

    def entry(self, size: int, output: str) -> CvEntry:
        for candidate in self.entries:
            if candidate.size == size and candidate.output == output:
                return candidate
        raise KeyError(f"No cross-validation entry for size {size} and output '{output}'")

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {"size": e.size, "output": e.output, "nrmse_mean": e.nrmse_mean, "nrmse_std": e.nrmse_std}
                for e in self.entries
            ],
            columns=LEARNING_CURVE_COLUMNS,
        )


def fold_indices(n_rows: int, folds: int, seed: int) -> List[np.ndarray]:
    """
    Shuffle row indices with ``generator(seed)`` and split them into ``folds`` parts.

    The parts partition range(n_rows); sizes differ by at most one.

    Raises:
        ValueError: If folds < 2 or there are fewer rows than folds
    """
    if folds < 2:
        raise ValueError(f"Cross-validation needs at least 2 folds, got {folds}")
    if n_rows < folds:
        raise ValueError(f"Cannot split {n_rows} rows into {folds} folds")
    permutation = generator(seed).permutation(n_rows)
    return list(np.array_split(permutation, folds))


def max_training_size(n_rows: int, folds: int) -> int:
    """Largest training size every fold can supply."""
    return n_rows - math.ceil(n_rows / folds)


def _check_sizes(sizes: Sequence[int], limit: int) -> List[int]:
    sizes = [int(s) for s in sizes]
    if not sizes:
        raise ValueError("At least one training size is required")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"Training sizes must be strictly increasing, got {sizes}")
    if sizes[0] < 2:
        raise ValueError(f"Training sizes must be at least 2, got {sizes[0]}")
    if sizes[-1] > limit:
        raise ValueError(
            f"Training size {sizes[-1]} exceeds the {limit} rows available per training split"
        )
    return sizes


def cross_validate(dataset: Dataset, spec: ModelSpec, folds: int = 5,
                   training_sizes: Sequence[int] = DEFAULT_TRAINING_SIZES, seed: int = 0,
                   outputs: Sequence[str] = ("mean", "p5"), workers: int = 1,
                   progress: bool = True) -> CvReport:
    """
    Learning curve by K-fold cross-validation.

    For every size and fold the model is trained on the first ``size`` rows of
    the other folds (in shuffled order) and scored by nRMSE on the held-out
    fold. Fold f trains with seed ``mix64(seed, f)``.

    Raises:
        ValueError: If a size exceeds the rows available per training split
    """
    parts = fold_indices(len(dataset), folds, seed)
    sizes = _check_sizes(training_sizes, max_training_size(len(dataset), folds))
    features = dataset.features()
    logger.info(f"Cross-validating {spec.kind} with {folds} folds at sizes {sizes}")
    start_time = time.time()

    def run_cell(cell: Tuple[int, int, str]) -> Tuple[float, np.ndarray]:
        size, fold, output = cell
        train_rows = np.concatenate([parts[j] for j in range(folds) if j != fold])[:size]
        test_rows = parts[fold]
        model = train_model(dataset.subset(train_rows), spec, target=output, seed=mix64(seed, fold))
        y = dataset.targets(output)[test_rows]
        y_hat = model.predict_many(features[test_rows])
        return nrmse(y, y_hat), y - y_hat

    report = CvReport(folds=folds)
    for size in tqdm(sizes, desc="Learning curve", disable=not progress):
        for output in outputs:
            cells = [(size, fold, output) for fold in range(folds)]
            results = ordered_map(run_cell, cells, workers)
            report.entries.append(CvEntry(
                size=size,
                output=output,
                fold_scores=np.array([score for score, _ in results]),
                residuals=np.concatenate([residual for _, residual in results]),
            ))

    logger.info(f"Cross-validation finished in {time.time() - start_time:.2f} seconds")
    return report


def write_learning_curve(report: CvReport, path: str) -> None:
    report.to_frame().to_csv(path, index=False, lineterminator='\n')
    logger.info(f"Learning curve saved to {path}")


def read_learning_curve(path: str) -> pd.DataFrame:
    frame = pd.read_csv(path, float_precision='round_trip')
    missing = [c for c in LEARNING_CURVE_COLUMNS if c not in frame.columns]
    if missing:
        raise ValueError(f"Learning curve {path} is missing columns: {missing}")
    return frame
