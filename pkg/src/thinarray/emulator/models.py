"""
Emulator models: a fitted scaler plus one regressor for one simulator output.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Protocol, Tuple, Union

import numpy as np

from ..models import DEFAULT_BOUNDS, Bounds, InputConfig
from ..network.dataset import TARGET_COLUMNS, Dataset
from .forest import RandomForest
from .knn import KnnRegressor
from .ridge import RidgeRegressor
from .scaler import FeatureScaler, fit_scaler

logger = logging.getLogger(__name__)

MODEL_KINDS = ("ridge", "random_forest", "knn")
KIND_ALIASES = {"rf": "random_forest", "forest": "random_forest"}

DEFAULT_PARAMS: Dict[str, Dict[str, Any]] = {
    "ridge": {"lam": 1.0},
    "random_forest": {"n_trees": 200, "min_leaf": 2, "bootstrap": True},
    "knn": {"k": 5},
}

Regressor = Union[RidgeRegressor, RandomForest, KnnRegressor]


class Surrogate(Protocol):
    """Anything that predicts one output for a batch of raw (n, 4) inputs."""

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        ...


def normalize_kind(kind: str) -> str:
    kind = KIND_ALIASES.get(kind, kind)
    if kind not in MODEL_KINDS:
        raise ValueError(f"Unknown model kind '{kind}', expected one of {list(MODEL_KINDS)}")
    return kind


@dataclass(frozen=True)
class ModelSpec:
    """A trainable model kind with its hyper-parameters"""
    kind: str
    params: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        kind = normalize_kind(self.kind)
        unknown = set(self.params) - set(DEFAULT_PARAMS[kind])
        if unknown:
            raise ValueError(f"Unknown parameter(s) for {kind}: {sorted(unknown)}")
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'params', {**DEFAULT_PARAMS[kind], **self.params})


@dataclass(frozen=True, eq=False)
class EmulatorModel:
    """Trained regressor mapping InputConfig to one SINR statistic"""
    kind: str
    target: str
    scaler: FeatureScaler
    regressor: Regressor
    n_train: int
    seed: Optional[int] = None
    bounds: Bounds = DEFAULT_BOUNDS

    def check_inputs(self, features: np.ndarray) -> np.ndarray:
        x = np.atleast_2d(np.asarray(features, dtype=float))
        if x.shape[1] != 4:
            raise ValueError(f"Expected (n, 4) inputs, got shape {x.shape}")
        outside = np.any((x < self.bounds.low) | (x > self.bounds.high) | ~np.isfinite(x), axis=1)
        if outside.any():
            row = int(np.argmax(outside))
            problems = self.bounds.violations(InputConfig.from_array(x[row]))
            raise ValueError(f"Input row {row} is out of bounds: {', '.join(problems) or 'non-finite value'}")
        return x

    def predict_many(self, features: np.ndarray) -> np.ndarray:
        """
        Predict a batch of raw inputs.

        Raises:
            ValueError: If any row lies outside the training bounds
        """
        x = self.check_inputs(features)
        return self.regressor.predict(self.scaler.transform(x))

    def predict(self, config: InputConfig) -> float:
        return float(self.predict_many(config.as_array()[None, :])[0])


@dataclass(frozen=True, eq=False)
class EmulatorPair:
    """Mean-SINR and 5th-percentile emulators used together"""
    mean: Surrogate
    p5: Surrogate

    def predict_many(self, features: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return self.mean.predict_many(features), self.p5.predict_many(features)

    def predict(self, config: InputConfig) -> Tuple[float, float]:
        mean, p5 = self.predict_many(config.as_array()[None, :])
        return float(mean[0]), float(p5[0])


def predict(models: EmulatorPair, config: InputConfig) -> Tuple[float, float]:
    """Predicted (mean_db, p5_db) for one in-bounds input."""
    return models.predict(config)


def _check_training_set(dataset: Dataset, target: str) -> None:
    if target not in TARGET_COLUMNS:
        raise ValueError(f"Unknown target '{target}', expected one of {sorted(TARGET_COLUMNS)}")
    if len(dataset) < 2:
        raise ValueError(f"Training needs at least 2 rows, got {len(dataset)}")


def train_ridge(dataset: Dataset, lam: float = 1.0, target: str = "mean") -> EmulatorModel:
    _check_training_set(dataset, target)
    scaler = fit_scaler(dataset)
    regressor = RidgeRegressor.fit(scaler.transform(dataset.features()), dataset.targets(target), lam=lam)
    return EmulatorModel("ridge", target, scaler, regressor, n_train=len(dataset), bounds=dataset.bounds)


def train_random_forest(dataset: Dataset, n_trees: int = 200, min_leaf: int = 2, bootstrap: bool = True,
                        seed: int = 0, target: str = "mean", workers: int = 1) -> EmulatorModel:
    _check_training_set(dataset, target)
    scaler = fit_scaler(dataset)
    regressor = RandomForest.fit(scaler.transform(dataset.features()), dataset.targets(target),
                                 n_trees=n_trees, min_leaf=min_leaf, bootstrap=bootstrap,
                                 seed=seed, workers=workers)
    return EmulatorModel("random_forest", target, scaler, regressor, n_train=len(dataset),
                         seed=seed, bounds=dataset.bounds)


def train_knn(dataset: Dataset, k: int = 5, target: str = "mean") -> EmulatorModel:
    _check_training_set(dataset, target)
    scaler = fit_scaler(dataset)
    regressor = KnnRegressor.fit(scaler.transform(dataset.features()), dataset.targets(target), k=k)
    return EmulatorModel("knn", target, scaler, regressor, n_train=len(dataset), bounds=dataset.bounds)


def train_model(dataset: Dataset, spec: ModelSpec, target: str = "mean", seed: int = 0,
                workers: int = 1) -> EmulatorModel:
    """Train the model described by ``spec`` on one output of ``dataset``."""
    start_time = time.time()
    if spec.kind == "ridge":
        model = train_ridge(dataset, lam=spec.params["lam"], target=target)
    elif spec.kind == "random_forest":
        model = train_random_forest(dataset, n_trees=spec.params["n_trees"], min_leaf=spec.params["min_leaf"],
                                    bootstrap=spec.params["bootstrap"], seed=seed, target=target,
                                    workers=workers)
    else:
        model = train_knn(dataset, k=spec.params["k"], target=target)
    logger.debug(f"Trained {spec.kind} on {len(dataset)} rows ({target}) in {time.time() - start_time:.2f} seconds")
    return model
