from dataclasses import dataclass

import numpy as np

PREDICT_BATCH = 2048


@dataclass(frozen=True, eq=False)
class KnnRegressor:
    """Inverse-distance-weighted k nearest neighbours in standardized space"""
    z_train: np.ndarray
    y_train: np.ndarray
    k: int

    @classmethod
    def fit(cls, z: np.ndarray, y: np.ndarray, k: int = 5) -> "KnnRegressor":
        """
        Raises:
            ValueError: If k < 1 or k exceeds the number of training rows
        """
        z = np.asarray(z, dtype=float)
        y = np.asarray(y, dtype=float)
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        if k > z.shape[0]:
            raise ValueError(f"k ({k}) exceeds the training set ({z.shape[0]} rows)")
        return cls(z_train=z.copy(), y_train=y.copy(), k=int(k))

    def predict(self, z: np.ndarray) -> np.ndarray:
        """
        Weighted mean of the k nearest targets with weights 1/distance.

        A query at distance 0 from one or more training rows returns the mean
        of those rows' targets. Distance ties are broken by training row order.
        """
        z = np.atleast_2d(np.asarray(z, dtype=float))
        out = np.empty(z.shape[0])
        for start in range(0, z.shape[0], PREDICT_BATCH):
            chunk = z[start:start + PREDICT_BATCH]
            dist = np.sqrt(((chunk[:, None, :] - self.z_train[None, :, :]) ** 2).sum(axis=2))
            exact = dist == 0
            nearest = np.argsort(dist, axis=1, kind='stable')[:, :self.k]
            d = np.take_along_axis(dist, nearest, axis=1)
            with np.errstate(divide='ignore'):
                weights = np.where(d > 0, 1.0 / d, 0.0)
            pred = (weights * self.y_train[nearest]).sum(axis=1) / np.maximum(weights.sum(axis=1), np.finfo(float).tiny)

            hits = exact.any(axis=1)
            if hits.any():
                pred[hits] = (exact[hits] * self.y_train).sum(axis=1) / exact[hits].sum(axis=1)
            out[start:start + PREDICT_BATCH] = pred
        return out

    def to_dict(self) -> dict:
        return {"k": self.k, "z_train": self.z_train.tolist(), "y_train": self.y_train.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "KnnRegressor":
        return cls.fit(np.array(data["z_train"], dtype=float), np.array(data["y_train"], dtype=float),
                       k=int(data["k"]))
