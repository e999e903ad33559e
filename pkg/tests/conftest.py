"""
Shared fixtures: synthetic datasets with known response surfaces.
"""

import numpy as np
import pytest

from thinarray.models import DEFAULT_BOUNDS, InputConfig, SinrStats
from thinarray.network.dataset import Dataset, DatasetRow


def build_dataset(inputs, mean_values, p5_values, bounds=DEFAULT_BOUNDS, seeds=None) -> Dataset:
    """Dataset from raw (n, 4) inputs and per-row targets."""
    inputs = np.asarray(inputs, dtype=float)
    seeds = range(len(inputs)) if seeds is None else seeds
    rows = [
        DatasetRow(
            input=InputConfig.from_array(x),
            output=SinrStats(mean_db=float(m), p5_db=float(p), n_samples=100),
            n_iter=100,
            seed=int(s),
        )
        for x, m, p, s in zip(inputs, mean_values, p5_values, seeds)
    ]
    return Dataset(rows, bounds=bounds)


def quadratic_surface(x: np.ndarray) -> np.ndarray:
    """Smooth bowl over the default bounds, well away from zero."""
    t = (x - DEFAULT_BOUNDS.low) / DEFAULT_BOUNDS.span
    return 20.0 - 8.0 * np.sum((t - 0.5) ** 2, axis=1)


@pytest.fixture
def make_dataset():
    """Factory: n rows drawn uniformly in bounds with quadratic targets plus noise."""

    def factory(n: int, seed: int = 0, noise: float = 0.0) -> Dataset:
        rng = np.random.default_rng(seed)
        x = DEFAULT_BOUNDS.sample(rng, n)
        mean = quadratic_surface(x) + noise * rng.standard_normal(n)
        p5 = mean - 10.0 + noise * rng.standard_normal(n)
        return build_dataset(x, mean, p5)

    return factory
