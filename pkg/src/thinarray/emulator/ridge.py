from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class RidgeRegressor:
    """Linear model on standardized features with an unpenalized intercept"""
    weights: np.ndarray
    intercept: float
    lam: float

    @classmethod
    def fit(cls, z: np.ndarray, y: np.ndarray, lam: float = 1.0) -> "RidgeRegressor":
        """
        Closed-form minimizer of ||Zw + b - y||^2 + lam ||w||^2.

        Raises:
            ValueError: With lam < 0, no more rows than features, or a
                singular normal matrix at lam = 0
        """
        z = np.asarray(z, dtype=float)
        y = np.asarray(y, dtype=float)
        n, p = z.shape
        if lam < 0:
            raise ValueError(f"Ridge regularization must be non-negative, got {lam}")
        if n <= p:
            raise ValueError(f"Ridge needs more rows than features ({n} rows, {p} features)")

        z_mean = z.mean(axis=0)
        y_mean = float(y.mean())
        zc = z - z_mean
        normal = zc.T @ zc + lam * np.eye(p)
        if lam == 0 and np.linalg.matrix_rank(normal) < p:
            raise ValueError("Normal matrix is singular; use a positive regularization")
        weights = np.linalg.solve(normal, zc.T @ (y - y_mean))
        return cls(weights=weights, intercept=y_mean - float(z_mean @ weights), lam=float(lam))

    def predict(self, z: np.ndarray) -> np.ndarray:
        return np.asarray(z, dtype=float) @ self.weights + self.intercept

    def to_dict(self) -> dict:
        return {"lambda": self.lam, "weights": self.weights.tolist(), "intercept": self.intercept}

    @classmethod
    def from_dict(cls, data: dict) -> "RidgeRegressor":
        return cls(weights=np.array(data["weights"], dtype=float),
                   intercept=float(data["intercept"]), lam=float(data["lambda"]))
