from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class FeatureScaler:
    """Per-feature standardization fitted on training inputs"""
    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float)
        std = np.array(self.std, dtype=float)
        if mean.shape != std.shape:
            raise ValueError(f"Scaler mean/std shapes differ: {mean.shape} vs {std.shape}")
        if np.any(std <= 0):
            raise ValueError(f"Scaler standard deviations must be positive, got {std.tolist()}")
        object.__setattr__(self, 'mean', mean)
        object.__setattr__(self, 'std', std)

    def transform(self, features) -> np.ndarray:
        x = np.asarray(features, dtype=float)
        if x.shape[-1] != self.mean.size:
            raise ValueError(f"Expected {self.mean.size} features, got {x.shape[-1]}")
        return (x - self.mean) / self.std

    def to_dict(self) -> dict:
        return {"mean": self.mean.tolist(), "std": self.std.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "FeatureScaler":
        return cls(mean=np.array(data["mean"], dtype=float), std=np.array(data["std"], dtype=float))


def fit_scaler(data) -> FeatureScaler:
    """
    Fit zero-mean / unit-variance scaling (population standard deviation).

    Args:
        data: A Dataset or an (n, p) feature matrix

    Raises:
        ValueError: With fewer than two rows or a constant feature
    """
    features = data.features() if hasattr(data, "features") else np.asarray(data, dtype=float)
    if features.ndim != 2 or features.shape[0] < 2:
        raise ValueError("Scaler needs at least two rows")
    std = features.std(axis=0)
    if np.any(std == 0):
        constant = [int(i) for i in np.nonzero(std == 0)[0]]
        raise ValueError(f"Feature column(s) {constant} are constant and cannot be standardized")
    return FeatureScaler(mean=features.mean(axis=0), std=std)


def apply_scaler(scaler: FeatureScaler, features) -> np.ndarray:
    return scaler.transform(features)
