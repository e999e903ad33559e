"""
Test cases for k-nearest-neighbour regression.
"""

import numpy as np
import pytest

from thinarray.emulator.knn import KnnRegressor

Z = np.array([[0.0], [1.0], [3.0], [6.0]])
Y = np.array([10.0, 20.0, 30.0, 40.0])


class TestKnnRegressor:
    """Test cases for inverse-distance weighting"""

    def test_hand_example(self):
        """Query 2.5 with k=2: neighbours 3 (d=0.5) and 1 (d=1.5)"""
        knn = KnnRegressor.fit(Z, Y, k=2)
        assert knn.predict(np.array([[2.5]]))[0] == pytest.approx(27.5)

    def test_exact_match_returns_training_target(self):
        knn = KnnRegressor.fit(Z, Y, k=3)
        assert knn.predict(np.array([[3.0]]))[0] == 30.0

    def test_duplicate_exact_matches_are_averaged(self):
        z = np.array([[1.0], [1.0], [5.0]])
        knn = KnnRegressor.fit(z, np.array([2.0, 4.0, 100.0]), k=1)
        assert knn.predict(np.array([[1.0]]))[0] == 3.0

    def test_k_one_is_nearest_neighbour(self):
        knn = KnnRegressor.fit(Z, Y, k=1)
        assert knn.predict(np.array([[4.4], [4.6], [-7.0]])).tolist() == [30.0, 40.0, 10.0]

    def test_all_neighbours_bounded_by_targets(self):
        knn = KnnRegressor.fit(Z, Y, k=4)
        predictions = knn.predict(np.linspace(-5, 10, 101)[:, None])
        assert predictions.min() >= 10.0 and predictions.max() <= 40.0

    def test_distance_ties_go_to_earlier_rows(self):
        z = np.array([[-1.0], [1.0], [5.0]])
        knn = KnnRegressor.fit(z, np.array([0.0, 10.0, 20.0]), k=1)
        assert knn.predict(np.array([[0.0]]))[0] == 0.0

    def test_batches_match_single_queries(self):
        rng = np.random.default_rng(4)
        z_train = rng.standard_normal((60, 4))
        knn = KnnRegressor.fit(z_train, rng.standard_normal(60), k=5)
        queries = rng.standard_normal((5000, 4))
        batch = knn.predict(queries)
        for i in (0, 2047, 2048, 4999):
            assert batch[i] == knn.predict(queries[i:i + 1])[0]

    def test_invalid_k(self):
        with pytest.raises(ValueError):
            KnnRegressor.fit(Z, Y, k=0)
        with pytest.raises(ValueError, match="exceeds"):
            KnnRegressor.fit(Z, Y, k=5)

    def test_dict_form(self):
        knn = KnnRegressor.fit(Z, Y, k=2)
        restored = KnnRegressor.from_dict(knn.to_dict())
        assert restored.k == 2
        assert np.array_equal(restored.predict(Z + 0.3), knn.predict(Z + 0.3))
