"""
Test cases for dataset generation and persistence.
"""

import numpy as np
import pytest

from thinarray.models import Bounds, InputConfig, SinrStats
from thinarray.network.config import NetworkConfig
from thinarray.network.dataset import (DATASET_COLUMNS, Dataset, DatasetRow, draw_input, generate_dataset,
                                       load_dataset, save_dataset)
from thinarray.network.simulator import simulate
from thinarray.rng import mix64

from conftest import build_dataset

SMALL = dict(lattice_dims=(10, 10), n_active=8)


@pytest.fixture(scope="module")
def small_dataset():
    return generate_dataset(4, 6, seed=12, cfg=NetworkConfig(), progress=False, **SMALL)


class TestGenerateDataset:
    """Test cases for dataset generation"""

    def test_row_count_and_provenance(self, small_dataset):
        assert len(small_dataset) == 4
        for j, row in enumerate(small_dataset.rows):
            assert row.seed == mix64(12, j)
            assert row.n_iter == 6
            assert small_dataset.bounds.contains(row.input)

    def test_rows_are_reproducible_individually(self, small_dataset):
        row = small_dataset.rows[2]
        config = draw_input(small_dataset.bounds, row.seed)
        assert config == row.input
        assert simulate(config, NetworkConfig(), n_iter=6, seed=row.seed, **SMALL) == row.output

    def test_independent_of_workers(self, small_dataset):
        parallel = generate_dataset(4, 6, seed=12, cfg=NetworkConfig(), workers=3, progress=False, **SMALL)
        assert parallel.to_frame().equals(small_dataset.to_frame())

    def test_custom_bounds(self):
        bounds = Bounds(d_y=(0.5, 0.6), d_z=(0.5, 0.6), alpha_y=(0.0, 1.0), alpha_z=(0.0, 1.0))
        dataset = generate_dataset(3, 2, seed=0, cfg=NetworkConfig(), bounds=bounds, progress=False, **SMALL)
        assert all(bounds.contains(row.input) for row in dataset.rows)

    def test_invalid_counts(self):
        with pytest.raises(ValueError):
            generate_dataset(0, 10, seed=0, cfg=NetworkConfig(), progress=False)
        with pytest.raises(ValueError):
            generate_dataset(10, 0, seed=0, cfg=NetworkConfig(), progress=False)


class TestDatasetValidation:
    """Test cases for dataset invariants"""

    def test_out_of_bounds_row_rejected(self):
        with pytest.raises(ValueError, match="out of bounds"):
            build_dataset([[0.2, 0.5, 0.0, 0.0]], [10.0], [0.0])

    def test_duplicate_seed_and_input_rejected(self):
        with pytest.raises(ValueError, match="duplicates"):
            build_dataset([[0.5, 0.5, 0.0, 0.0]] * 2, [10.0, 11.0], [0.0, 1.0], seeds=[3, 3])

    def test_same_input_different_seed_allowed(self):
        dataset = build_dataset([[0.5, 0.5, 0.0, 0.0]] * 2, [10.0, 11.0], [0.0, 1.0], seeds=[3, 4])
        assert len(dataset) == 2

    def test_append_rolls_back_on_error(self):
        dataset = build_dataset([[0.5, 0.5, 0.0, 0.0]], [10.0], [0.0], seeds=[1])
        duplicate = DatasetRow(input=InputConfig(0.5, 0.5, 0.0, 0.0),
                               output=SinrStats(1.0, 0.0, 10), n_iter=10, seed=1)
        with pytest.raises(ValueError):
            dataset.append(duplicate)
        assert len(dataset) == 1

    def test_targets(self):
        dataset = build_dataset([[0.5, 0.5, 0.0, 0.0], [0.6, 0.5, 0.0, 0.0]], [10.0, 12.0], [1.0, 2.0])
        assert dataset.targets("mean").tolist() == [10.0, 12.0]
        assert dataset.targets("p5").tolist() == [1.0, 2.0]
        with pytest.raises(ValueError):
            dataset.targets("median")

    def test_empty_features(self):
        assert Dataset().features().shape == (0, 4)


class TestPersistence:
    """Test cases for dataset CSV files"""

    def test_save_and_load_exact(self, small_dataset, tmp_path):
        path = tmp_path / "dataset.csv"
        save_dataset(small_dataset, str(path))
        loaded = load_dataset(str(path))
        assert loaded == small_dataset
        assert path.read_text(encoding='utf-8').splitlines()[0] == ",".join(DATASET_COLUMNS)

    def test_second_write_is_byte_identical(self, small_dataset, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        save_dataset(small_dataset, str(first))
        save_dataset(load_dataset(str(first)), str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("seed,n_iter,d_y\n1,10,0.5\n", encoding='utf-8')
        with pytest.raises(ValueError, match="missing columns"):
            load_dataset(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_dataset(str(tmp_path / "nope.csv"))


class TestCorrelations:
    """Test cases for the correlation summary"""

    def test_shape_and_diagonal(self, make_dataset):
        corr = make_dataset(60, seed=1, noise=0.1).correlations()
        names = ["d_y", "d_z", "alpha_y", "alpha_z", "sinr_mean_db", "sinr_p5_db"]
        assert list(corr.columns) == names
        assert list(corr.index) == names
        assert np.allclose(np.diag(corr.to_numpy()), 1.0)
        assert np.allclose(corr.to_numpy(), corr.to_numpy().T)
        assert corr.loc["sinr_mean_db", "sinr_p5_db"] > 0.9
