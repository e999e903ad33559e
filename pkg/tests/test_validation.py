"""
Test cases for cross-validation and learning curves.
"""

import numpy as np
import pytest

from thinarray.emulator.metrics import nrmse
from thinarray.emulator.models import ModelSpec
from thinarray.emulator.validation import (LEARNING_CURVE_COLUMNS, cross_validate, fold_indices,
                                           max_training_size, read_learning_curve, write_learning_curve)
from thinarray.models import DEFAULT_BOUNDS

from conftest import build_dataset

KNN_1 = ModelSpec("knn", {"k": 1})


def on_diagonal(t):
    """Inputs with every parameter at the same relative position t of its range."""
    t = np.asarray(t, dtype=float)[:, None]
    return DEFAULT_BOUNDS.low + t * DEFAULT_BOUNDS.span


class TestFolds:
    """Test cases for fold assignment"""

    def test_partition(self):
        parts = fold_indices(23, 5, seed=4)
        assert len(parts) == 5
        assert sorted(np.concatenate(parts).tolist()) == list(range(23))
        sizes = [len(p) for p in parts]
        assert max(sizes) - min(sizes) <= 1

    def test_deterministic(self):
        a = fold_indices(50, 5, seed=1)
        b = fold_indices(50, 5, seed=1)
        assert all(np.array_equal(x, y) for x, y in zip(a, b))

    def test_invalid_fold_counts(self):
        with pytest.raises(ValueError):
            fold_indices(10, 1, seed=0)
        with pytest.raises(ValueError):
            fold_indices(3, 5, seed=0)

    def test_max_training_size(self):
        assert max_training_size(1000, 5) == 800
        assert max_training_size(4, 2) == 2
        assert max_training_size(23, 5) == 18


class TestCrossValidate:
    """Test cases for the learning-curve computation"""

    def test_hand_computed_two_fold_evaluation(self):
        t = np.array([0.1, 0.2, 0.6, 0.9])
        mean = np.array([10.0, 20.0, 30.0, 40.0])
        p5 = np.array([1.0, 2.0, 4.0, 8.0])
        dataset = build_dataset(on_diagonal(t), mean, p5)

        report = cross_validate(dataset, KNN_1, folds=2, training_sizes=[2], seed=7, progress=False)

        parts = fold_indices(4, 2, seed=7)
        for output, y in (("mean", mean), ("p5", p5)):
            expected = []
            for fold in range(2):
                train = parts[1 - fold]
                test = parts[fold]
                nearest = [train[np.argmin(np.abs(t[train] - t[i]))] for i in test]
                expected.append(nrmse(y[test], y[nearest]))
            entry = report.entry(2, output)
            assert np.allclose(entry.fold_scores, expected)
            assert entry.nrmse_mean == pytest.approx(np.mean(expected))
            assert entry.nrmse_std == pytest.approx(np.std(expected))

    def test_leaked_target_gives_zero_error(self):
        """Every input occurs many times with one target, so 1-NN reproduces it"""
        t = np.repeat([0.1, 0.3, 0.5, 0.7, 0.9], 40)
        mean = 10.0 + 20.0 * t
        dataset = build_dataset(on_diagonal(t), mean, mean - 5.0, seeds=range(len(t)))
        report = cross_validate(dataset, KNN_1, folds=5, training_sizes=[80, 120, 160], seed=0, progress=False)
        for entry in report.entries:
            assert entry.nrmse_mean < 1e-9

    def test_report_layout(self, make_dataset):
        dataset = make_dataset(60, seed=1)
        report = cross_validate(dataset, ModelSpec("ridge"), folds=3, training_sizes=[10, 40], seed=2,
                                progress=False)
        assert report.sizes == [10, 40]
        frame = report.to_frame()
        assert list(frame.columns) == LEARNING_CURVE_COLUMNS
        assert frame[["size", "output"]].values.tolist() == [[10, "mean"], [10, "p5"], [40, "mean"], [40, "p5"]]
        for entry in report.entries:
            assert entry.fold_scores.shape == (3,)
            assert entry.residuals.shape == (60,)

    def test_reproducible(self, make_dataset):
        dataset = make_dataset(60, seed=3, noise=0.2)
        spec = ModelSpec("rf", {"n_trees": 5})
        a = cross_validate(dataset, spec, folds=3, training_sizes=[20, 40], seed=5, progress=False)
        b = cross_validate(dataset, spec, folds=3, training_sizes=[20, 40], seed=5, progress=False, workers=3)
        assert a.to_frame().equals(b.to_frame())

    def test_forest_improves_with_training_size(self, make_dataset):
        dataset = make_dataset(400, seed=0, noise=0.1)
        report = cross_validate(dataset, ModelSpec("rf", {"n_trees": 30}), folds=5, training_sizes=[20, 320],
                                seed=1, outputs=("mean",), progress=False)
        assert report.entry(320, "mean").nrmse_mean <= report.entry(20, "mean").nrmse_mean

    def test_forest_beats_ridge_on_curved_surface(self, make_dataset):
        dataset = make_dataset(400, seed=6, noise=0.1)
        scores = {}
        for spec in (ModelSpec("rf", {"n_trees": 30}), ModelSpec("ridge")):
            report = cross_validate(dataset, spec, folds=5, training_sizes=[320], seed=2, outputs=("mean",),
                                    progress=False)
            scores[spec.kind] = report.entry(320, "mean").nrmse_mean
        assert scores["random_forest"] <= scores["ridge"]

    def test_default_size_range_end_beats_start(self, make_dataset):
        dataset = make_dataset(1000, seed=8, noise=0.2)
        report = cross_validate(dataset, ModelSpec("rf", {"n_trees": 20}), folds=5, training_sizes=[100, 800],
                                seed=3, outputs=("mean",), progress=False)
        assert report.entry(800, "mean").nrmse_mean <= report.entry(100, "mean").nrmse_mean

    @pytest.mark.parametrize("spec", [ModelSpec("ridge"), ModelSpec("rf", {"n_trees": 30})])
    def test_residuals_centered_on_zero(self, spec):
        """Linear surface plus noise; the pooled held-out residual mean stays within three standard errors"""
        rng = np.random.default_rng(12)
        x = DEFAULT_BOUNDS.sample(rng, 500)
        t = (x - DEFAULT_BOUNDS.low) / DEFAULT_BOUNDS.span
        mean = 15.0 + 4.0 * t[:, 0] - 3.0 * t[:, 2] + rng.standard_normal(500)
        dataset = build_dataset(x, mean, mean - 10.0 + rng.standard_normal(500))
        report = cross_validate(dataset, spec, folds=5, training_sizes=[400], seed=4, progress=False)
        for output in ("mean", "p5"):
            residuals = report.entry(400, output).residuals
            assert residuals.shape == (500,)
            standard_error = residuals.std(ddof=1) / np.sqrt(residuals.size)
            assert abs(residuals.mean()) <= 3 * standard_error

    def test_size_above_training_split_rejected(self, make_dataset):
        with pytest.raises(ValueError, match="exceeds"):
            cross_validate(make_dataset(50), KNN_1, folds=5, training_sizes=[41], progress=False)

    def test_sizes_must_increase(self, make_dataset):
        with pytest.raises(ValueError, match="strictly increasing"):
            cross_validate(make_dataset(50), KNN_1, folds=5, training_sizes=[20, 10], progress=False)

    def test_missing_entry(self, make_dataset):
        report = cross_validate(make_dataset(30), KNN_1, folds=3, training_sizes=[5], progress=False)
        with pytest.raises(KeyError):
            report.entry(6, "mean")


class TestLearningCurveFile:
    """Test cases for learning-curve CSV files"""

    def test_write_and_read(self, make_dataset, tmp_path):
        report = cross_validate(make_dataset(40), ModelSpec("ridge"), folds=4, training_sizes=[10, 30],
                                progress=False)
        path = tmp_path / "curve.csv"
        write_learning_curve(report, str(path))
        frame = read_learning_curve(str(path))
        assert frame.equals(report.to_frame())

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "curve.csv"
        path.write_text("size,output\n10,mean\n", encoding='utf-8')
        with pytest.raises(ValueError, match="missing columns"):
            read_learning_curve(str(path))
