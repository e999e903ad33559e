"""
Test cases for ridge regression.
"""

import math

import numpy as np
import pytest

from thinarray.emulator.ridge import RidgeRegressor
from thinarray.emulator.scaler import fit_scaler


class TestRidgeFit:
    """Test cases for the closed-form ridge fit"""

    def test_hand_example_in_standardized_space(self):
        x = np.array([[0.0], [1.0], [2.0]])
        y = np.array([0.0, 1.0, 2.0])
        scaler = fit_scaler(x)
        ridge = RidgeRegressor.fit(scaler.transform(x), y, lam=1.0)
        # z = (x - 1) / sqrt(2/3); w = (z . y) / (z . z + 1) = sqrt(6) / 4
        assert ridge.weights[0] == pytest.approx(math.sqrt(6.0) / 4.0)
        assert ridge.intercept == pytest.approx(1.0)
        raw_slope = ridge.weights[0] / scaler.std[0]
        assert raw_slope == pytest.approx(0.75)

    def test_unregularized_fit_recovers_linear_model(self):
        rng = np.random.default_rng(0)
        z = rng.standard_normal((40, 3))
        y = z @ np.array([1.5, -2.0, 0.25]) + 4.0
        ridge = RidgeRegressor.fit(z, y, lam=0.0)
        assert np.allclose(ridge.weights, [1.5, -2.0, 0.25])
        assert ridge.intercept == pytest.approx(4.0)
        assert np.allclose(ridge.predict(z), y)

    def test_regularization_shrinks_weights(self):
        rng = np.random.default_rng(1)
        z = rng.standard_normal((30, 2))
        y = z @ np.array([3.0, -1.0])
        norms = [np.linalg.norm(RidgeRegressor.fit(z, y, lam=lam).weights) for lam in (0.0, 1.0, 10.0, 100.0)]
        assert norms == sorted(norms, reverse=True)

    def test_intercept_is_not_penalized(self):
        z = np.array([[-1.0], [0.0], [1.0]])
        y = np.array([100.0, 100.0, 100.0])
        ridge = RidgeRegressor.fit(z, y, lam=1e6)
        assert ridge.predict(np.array([[0.5]]))[0] == pytest.approx(100.0)

    def test_negative_lambda_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            RidgeRegressor.fit(np.eye(3), np.ones(3), lam=-1.0)

    def test_too_few_rows_rejected(self):
        with pytest.raises(ValueError, match="more rows than features"):
            RidgeRegressor.fit(np.ones((2, 2)), np.ones(2))

    def test_singular_without_regularization_rejected(self):
        z = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0], [4.0, 8.0]])
        with pytest.raises(ValueError, match="singular"):
            RidgeRegressor.fit(z, np.arange(4.0), lam=0.0)

    def test_singular_with_regularization_is_solved(self):
        z = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0], [4.0, 8.0]])
        ridge = RidgeRegressor.fit(z, np.arange(4.0), lam=0.1)
        assert np.all(np.isfinite(ridge.weights))

    def test_dict_form_uses_lambda_key(self):
        ridge = RidgeRegressor.fit(np.array([[0.0], [1.0], [2.0]]), np.array([1.0, 2.0, 4.0]), lam=0.5)
        data = ridge.to_dict()
        assert set(data) == {"lambda", "weights", "intercept"}
        restored = RidgeRegressor.from_dict(data)
        assert restored.lam == 0.5
        assert np.array_equal(restored.weights, ridge.weights)
