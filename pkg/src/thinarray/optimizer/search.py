"""
Constrained maximization of the predicted mean SINR.

    maximize   mean(x)   subject to   p5(x) > threshold,   x in bounds

Phase 1 scores 80% of the budget as uniform random samples; phase 2 runs a
projected compass search from the best point found. Points are ranked
lexicographically: feasible before infeasible, then by predicted mean
(feasible) or by smaller constraint violation (infeasible).
"""

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..models import DEFAULT_BOUNDS, Bounds, InputConfig
from ..rng import generator

logger = logging.getLogger(__name__)

DEFAULT_THRESHOLD_DB = 6.0
DEFAULT_BUDGET = 100_000
SAMPLING_SHARE = 0.8
INITIAL_STEP = 0.1
MIN_STEP = 0.001
SAMPLING_BATCH = 16384


@dataclass(frozen=True)
class TraceEntry:
    """One strict improvement of the incumbent"""
    evaluation: int
    input: InputConfig
    mean_db: float
    p5_db: float
    feasible: bool
    phase: str

    def to_dict(self) -> Dict[str, Any]:
        return {
            "evaluation": self.evaluation,
            "input": asdict(self.input),
            "mean_db": self.mean_db,
            "p5_db": self.p5_db,
            "feasible": self.feasible,
            "phase": self.phase,
        }


@dataclass
class OptimizationResult:
    best_input: InputConfig
    predicted_mean_db: float
    predicted_p5_db: float
    feasible: bool
    evaluations_used: int
    threshold_db: float
    trace: List[TraceEntry] = field(default_factory=list)

    def to_dict(self, manifest: Optional[str] = None) -> Dict[str, Any]:
        document = {
            "best_input": asdict(self.best_input),
            "predicted_mean_db": self.predicted_mean_db,
            "predicted_p5_db": self.predicted_p5_db,
            "feasible": self.feasible,
            "constraint_db": self.threshold_db,
            "evaluations_used": self.evaluations_used,
            "trace": [entry.to_dict() for entry in self.trace],
        }
        if manifest is not None:
            document["manifest"] = manifest
        return document

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "OptimizationResult":
        return cls(
            best_input=InputConfig(**data["best_input"]),
            predicted_mean_db=float(data["predicted_mean_db"]),
            predicted_p5_db=float(data["predicted_p5_db"]),
            feasible=bool(data["feasible"]),
            evaluations_used=int(data["evaluations_used"]),
            threshold_db=float(data["constraint_db"]),
            trace=[
                TraceEntry(
                    evaluation=int(e["evaluation"]),
                    input=InputConfig(**e["input"]),
                    mean_db=float(e["mean_db"]),
                    p5_db=float(e["p5_db"]),
                    feasible=bool(e["feasible"]),
                    phase=e["phase"],
                )
                for e in data["trace"]
            ],
        )


def rank_key(mean_db: float, p5_db: float, threshold_db: float) -> Tuple[int, float]:
    """Lexicographic rank; larger is better."""
    if p5_db > threshold_db:
        return (1, mean_db)
    return (0, -(threshold_db - p5_db))


def predict_pair(models, x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Mean and p5 predictions from an EmulatorPair or a (mean, p5) tuple."""
    if hasattr(models, "mean") and hasattr(models, "p5"):
        mean_model, p5_model = models.mean, models.p5
    else:
        mean_model, p5_model = models
    return (np.asarray(mean_model.predict_many(x), dtype=float),
            np.asarray(p5_model.predict_many(x), dtype=float))


class _Search:
    """Incumbent bookkeeping shared by both phases"""

    def __init__(self, models, threshold_db: float):
        self.models = models
        self.threshold_db = threshold_db
        self.evaluations = 0
        self.best_x: Optional[np.ndarray] = None
        self.best_mean = 0.0
        self.best_p5 = 0.0
        self.best_key: Optional[Tuple[int, float]] = None
        self.trace: List[TraceEntry] = []

    def offer(self, x: np.ndarray, mean_db: float, p5_db: float, phase: str) -> bool:
        self.evaluations += 1
        key = rank_key(mean_db, p5_db, self.threshold_db)
        if self.best_key is not None and key <= self.best_key:
            return False
        self.best_x, self.best_mean, self.best_p5, self.best_key = x.copy(), mean_db, p5_db, key
        self.trace.append(TraceEntry(
            evaluation=self.evaluations,
            input=InputConfig.from_array(x),
            mean_db=mean_db,
            p5_db=p5_db,
            feasible=bool(key[0]),
            phase=phase,
        ))
        return True

    def evaluate(self, x: np.ndarray, phase: str) -> bool:
        mean, p5 = predict_pair(self.models, x[None, :])
        return self.offer(x, float(mean[0]), float(p5[0]), phase)


def _sample_phase(search: _Search, bounds: Bounds, n_samples: int, seed: int) -> None:
    rng = generator(seed)
    for start in range(0, n_samples, SAMPLING_BATCH):
        x = bounds.sample(rng, min(SAMPLING_BATCH, n_samples - start))
        means, p5s = predict_pair(search.models, x)
        for row, mean, p5 in zip(x, means.tolist(), p5s.tolist()):
            search.offer(row, mean, p5, "sampling")


def _pattern_phase(search: _Search, bounds: Bounds, budget: int) -> None:
    low, high = bounds.low, bounds.high
    steps = INITIAL_STEP * bounds.span
    min_steps = MIN_STEP * bounds.span
    while search.evaluations < budget and np.any(steps >= min_steps):
        for axis in range(len(steps)):
            if steps[axis] < min_steps[axis]:
                continue
            improved = False
            for sign in (1.0, -1.0):
                if search.evaluations >= budget:
                    return
                candidate = search.best_x.copy()
                candidate[axis] = np.clip(candidate[axis] + sign * steps[axis], low[axis], high[axis])
                if candidate[axis] == search.best_x[axis]:
                    continue
                if search.evaluate(candidate, "pattern"):
                    improved = True
                    break
            if not improved:
                steps[axis] /= 2.0


def optimize(models, bounds: Bounds = DEFAULT_BOUNDS, threshold_db: float = DEFAULT_THRESHOLD_DB,
             budget: int = DEFAULT_BUDGET, seed: int = 0) -> OptimizationResult:
    """
    Search the box for the best predicted mean SINR meeting the coverage constraint.

    Args:
        models: EmulatorPair, or a (mean, p5) pair of objects with predict_many
        bounds: Search box
        threshold_db: Constraint on the predicted 5th-percentile SINR (strict)
        budget: Total number of emulator evaluations (>= 1)
        seed: Seed of the phase-1 sampling stream

    Returns:
        OptimizationResult; feasible=False when no evaluated point met the
        constraint, in which case best_input minimizes the violation

    Raises:
        ValueError: If budget < 1
    """
    if budget < 1:
        raise ValueError(f"Optimization budget must be at least 1, got {budget}")

    start_time = time.time()
    search = _Search(models, threshold_db)
    n_samples = max(1, int(SAMPLING_SHARE * budget))
    _sample_phase(search, bounds, n_samples, seed)
    logger.info(f"Sampling phase: {n_samples} evaluations, incumbent mean {search.best_mean:.3f} dB, "
                f"p5 {search.best_p5:.3f} dB")
    _pattern_phase(search, bounds, budget)

    result = OptimizationResult(
        best_input=InputConfig.from_array(search.best_x),
        predicted_mean_db=search.best_mean,
        predicted_p5_db=search.best_p5,
        feasible=bool(search.best_key[0]),
        evaluations_used=search.evaluations,
        threshold_db=threshold_db,
        trace=search.trace,
    )
    logger.info(f"Optimization finished in {time.time() - start_time:.2f} seconds "
                f"({result.evaluations_used} evaluations, feasible={result.feasible})")
    return result


def write_result(result: OptimizationResult, path: str, manifest: Optional[str] = None) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(result.to_dict(manifest=manifest), f, indent=2)
        f.write('\n')
    logger.info(f"Optimization result saved to {path}")


def read_result(path: str) -> OptimizationResult:
    with open(path, 'r', encoding='utf-8') as f:
        return OptimizationResult.from_dict(json.load(f))
