"""
Test cases for thinned mask generation and geometry conversion.
"""

import numpy as np
import pytest

from thinarray.arrays.models import ActivationMask, LatticeSpec, ProbabilityProfile
from thinarray.arrays.thinning import (activation_probability_map, generate_mask, log_profile_value,
                                       mask_to_geometry, mask_to_text, read_activation_map, read_mask_text,
                                       select_top_k, upa_geometry, write_activation_map, write_mask_text)
from thinarray.rng import generator


def brute_force_mask(n_rows, n_cols, d_y, d_z, alpha_y, alpha_z, n_active, seed):
    """Direct evaluation of v = u * f(dy, dz) over the quadrant, then explicit mirroring."""
    q_rows, q_cols = n_rows // 2, n_cols // 2
    u = 1.0 - generator(seed).random(q_rows * q_cols)
    values = []
    for r in range(q_rows):
        for c in range(q_cols):
            dy = abs(c - (n_cols - 1) / 2.0) * d_y
            dz = abs(r - (n_rows - 1) / 2.0) * d_z
            v = u[r * q_cols + c] * np.exp(-alpha_y * dy) * np.exp(-alpha_z * dz)
            values.append((v, r, c))
    values.sort(key=lambda item: -item[0])
    grid = np.zeros((n_rows, n_cols), dtype=bool)
    for _, r, c in values[:n_active // 4]:
        for rr in (r, n_rows - 1 - r):
            for cc in (c, n_cols - 1 - c):
                grid[rr, cc] = True
    return grid


class TestLogProfileValue:
    """Test cases for the log-domain probability profile"""

    def test_center_is_zero(self):
        assert log_profile_value(ProbabilityProfile(5, 5), 0.0, 0.0) == 0.0

    def test_direct_exponent(self):
        assert log_profile_value(ProbabilityProfile(1, 0), 2.0, 7.0) == -2.0

    def test_negative_rates_grow_outward(self):
        assert log_profile_value(ProbabilityProfile(-1, -1), 3.0, 4.0) == 7.0

    def test_negative_distance_rejected(self):
        with pytest.raises(ValueError):
            log_profile_value(ProbabilityProfile(1, 1), -0.1, 0.0)


class TestSelectTopK:
    """Test cases for top-k selection"""

    def test_largest_keys_sorted_indices(self):
        keys = np.array([0.1, 0.9, -3.0, 0.5, 0.7])
        assert select_top_k(keys, 3).tolist() == [1, 3, 4]

    def test_ties_go_to_lower_index(self):
        keys = np.array([1.0, 2.0, 2.0, 2.0])
        assert select_top_k(keys, 2).tolist() == [1, 2]

    def test_constant_shift_does_not_change_selection(self):
        keys = generator(3).standard_normal(200)
        for shift in (-1e3, -7.5, 0.0, 42.0):
            assert np.array_equal(select_top_k(keys + shift, 17), select_top_k(keys, 17))


class TestGenerateMask:
    """Test cases for mask generation"""

    def test_full_small_lattice(self):
        """4x4 lattice with 16 active elements switches everything on"""
        lattice = LatticeSpec(4, 4, 0.5, 0.5)
        mask = generate_mask(lattice, ProbabilityProfile(0, 0), 16, seed=123)
        assert mask.grid.all()

    def test_matches_brute_force_oracle(self):
        lattice = LatticeSpec(6, 6, 0.5, 0.5)
        mask = generate_mask(lattice, ProbabilityProfile(2, 1), 8, seed=42)
        expected = brute_force_mask(6, 6, 0.5, 0.5, 2.0, 1.0, 8, 42)
        assert np.array_equal(mask.grid, expected)

    def test_matches_brute_force_on_odd_lattice(self):
        lattice = LatticeSpec(7, 9, 0.6, 0.8)
        for seed in range(20):
            mask = generate_mask(lattice, ProbabilityProfile(0.5, 1.5), 12, seed=seed)
            expected = brute_force_mask(7, 9, 0.6, 0.8, 0.5, 1.5, 12, seed)
            assert np.array_equal(mask.grid, expected)

    def test_count_and_symmetry_over_random_tuples(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            n_rows = int(rng.integers(2, 14))
            n_cols = int(rng.integers(2, 14))
            lattice = LatticeSpec(n_rows, n_cols, float(rng.uniform(0.3, 1.0)), float(rng.uniform(0.3, 1.0)))
            profile = ProbabilityProfile(float(rng.uniform(-1, 10)), float(rng.uniform(-1, 10)))
            quadrant = (n_rows // 2) * (n_cols // 2)
            n_active = 4 * int(rng.integers(1, quadrant + 1))
            mask = generate_mask(lattice, profile, n_active, seed=int(rng.integers(0, 2 ** 63)))
            assert mask.n_active == n_active
            assert mask.is_mirror_symmetric()

    def test_deterministic(self):
        lattice = LatticeSpec(100, 99, 0.5, 0.5)
        profile = ProbabilityProfile(1.0, 2.0)
        assert generate_mask(lattice, profile, 64, 77) == generate_mask(lattice, profile, 64, 77)

    def test_different_seeds_differ(self):
        lattice = LatticeSpec(100, 99, 0.5, 0.5)
        profile = ProbabilityProfile(0.0, 0.0)
        assert generate_mask(lattice, profile, 64, 1) != generate_mask(lattice, profile, 64, 2)

    def test_steep_profile_has_no_underflow_ties(self):
        """alpha=10 on the full lattice still yields exactly 64 elements"""
        lattice = LatticeSpec(100, 99, 1.0, 1.0)
        mask = generate_mask(lattice, ProbabilityProfile(10, 10), 64, seed=5)
        assert mask.n_active == 64
        assert mask.is_mirror_symmetric()

    def test_center_lines_excluded_on_odd_dimension(self):
        lattice = LatticeSpec(100, 99, 0.5, 0.5)
        mask = generate_mask(lattice, ProbabilityProfile(10, 0), 64, seed=11)
        assert not mask.grid[:, 49].any()

    def test_strong_horizontal_decay_gives_vertical_family(self):
        """Active elements stay in the two columns nearest the vertical center line"""
        lattice = LatticeSpec(100, 99, 0.866, 0.761)
        profile = ProbabilityProfile(alpha_y=10.0, alpha_z=0.2)
        for seed in range(100):
            mask = generate_mask(lattice, profile, 64, seed=seed)
            cols = np.nonzero(mask.grid.any(axis=0))[0]
            assert set(cols.tolist()) <= {48, 50}

    def test_monotone_concentration_in_alpha_y(self):
        lattice = LatticeSpec(20, 21, 0.5, 0.5)
        means = []
        for alpha_y in (-1.0, 0.0, 2.0, 5.0, 10.0):
            spreads = []
            for seed in range(100):
                geometry = mask_to_geometry(lattice, generate_mask(lattice, ProbabilityProfile(alpha_y, 1.0), 32, seed))
                spreads.append(np.mean(np.abs(geometry.y)))
            means.append(np.mean(spreads))
        for wider, narrower in zip(means, means[1:]):
            assert narrower <= wider + 1e-12

    def test_rejects_count_not_multiple_of_four(self):
        with pytest.raises(ValueError, match="multiple of 4"):
            generate_mask(LatticeSpec(10, 10, 0.5, 0.5), ProbabilityProfile(0, 0), 6, seed=0)

    def test_rejects_count_exceeding_quadrant(self):
        with pytest.raises(ValueError, match="exceeds"):
            generate_mask(LatticeSpec(4, 4, 0.5, 0.5), ProbabilityProfile(0, 0), 20, seed=0)

    def test_rejects_center_line_only_lattice(self):
        with pytest.raises(ValueError):
            generate_mask(LatticeSpec(3, 3, 0.5, 0.5), ProbabilityProfile(0, 0), 8, seed=0)


class TestGeometry:
    """Test cases for mask-to-geometry conversion"""

    def test_single_cell_at_origin(self):
        geometry = mask_to_geometry(LatticeSpec(1, 1, 0.5, 0.5), ActivationMask([[True]]))
        assert geometry.elements == [(0.0, 0.0)]

    def test_symmetric_pair(self):
        geometry = mask_to_geometry(LatticeSpec(1, 2, 0.5, 0.5), ActivationMask([[True, True]]))
        assert geometry.elements == [(-0.25, 0.0), (0.25, 0.0)]

    def test_corners_of_unit_grid(self):
        grid = np.zeros((3, 3), dtype=bool)
        grid[[0, 0, 2, 2], [0, 2, 0, 2]] = True
        geometry = mask_to_geometry(LatticeSpec(3, 3, 1.0, 1.0), ActivationMask(grid))
        assert sorted(geometry.elements) == [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)]

    def test_row_major_order(self):
        grid = np.zeros((3, 3), dtype=bool)
        grid[0, 2] = grid[2, 0] = True
        geometry = mask_to_geometry(LatticeSpec(3, 3, 1.0, 1.0), ActivationMask(grid))
        assert geometry.elements == [(1.0, -1.0), (-1.0, 1.0)]

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            mask_to_geometry(LatticeSpec(2, 2, 0.5, 0.5), ActivationMask(np.ones((3, 3), dtype=bool)))

    def test_mask_geometry_is_point_symmetric(self):
        lattice = LatticeSpec(30, 31, 0.7, 0.4)
        geometry = mask_to_geometry(lattice, generate_mask(lattice, ProbabilityProfile(1, 1), 40, seed=8))
        points = {(round(y, 9), round(z, 9)) for y, z in geometry.elements}
        assert points == {(round(-y, 9), round(z, 9)) for y, z in points}
        assert points == {(round(y, 9), round(-z, 9)) for y, z in points}

    def test_upa_8x8(self):
        geometry = upa_geometry(8, 8, 0.5, 0.5)
        assert len(geometry) == 64
        assert geometry.y.min() == pytest.approx(-1.75)
        assert geometry.y.max() == pytest.approx(1.75)
        assert geometry.z.min() == pytest.approx(-1.75)
        assert geometry.z.max() == pytest.approx(1.75)

    def test_vertical_linear_array(self):
        geometry = upa_geometry(64, 1, 0.5, 0.796)
        assert len(geometry) == 64
        assert np.all(geometry.y == 0.0)
        assert geometry.z.max() - geometry.z.min() == pytest.approx(50.148)

    def test_single_element_upa(self):
        assert upa_geometry(1, 1, 0.5, 0.5).elements == [(0.0, 0.0)]


class TestActivationMap:
    """Test cases for activation probability maps"""

    def test_full_lattice_map_is_all_ones(self):
        probabilities = activation_probability_map(LatticeSpec(4, 4, 0.5, 0.5), ProbabilityProfile(0, 0),
                                                   16, n_samples=10, seed=1)
        assert np.array_equal(probabilities, np.ones((4, 4)))

    def test_map_is_mirror_symmetric(self):
        probabilities = activation_probability_map(LatticeSpec(11, 12, 0.5, 0.8), ProbabilityProfile(0.5, 2.0),
                                                   12, n_samples=300, seed=4)
        assert np.array_equal(probabilities, probabilities[:, ::-1])
        assert np.array_equal(probabilities, probabilities[::-1, :])
        assert probabilities.sum() == pytest.approx(12.0)

    def test_independent_of_worker_count(self):
        lattice = LatticeSpec(10, 10, 0.5, 0.5)
        profile = ProbabilityProfile(1.0, 1.0)
        serial = activation_probability_map(lattice, profile, 8, n_samples=200, seed=9, workers=1)
        parallel = activation_probability_map(lattice, profile, 8, n_samples=200, seed=9, workers=4)
        assert np.array_equal(serial, parallel)

    def test_agrees_with_larger_independent_estimate(self):
        lattice = LatticeSpec(6, 6, 0.5, 0.5)
        profile = ProbabilityProfile(2.0, 1.0)
        small = activation_probability_map(lattice, profile, 8, n_samples=5000, seed=1)
        large = activation_probability_map(lattice, profile, 8, n_samples=50000, seed=2)
        sigma = np.sqrt(large * (1 - large) * (1 / 5000 + 1 / 50000))
        assert np.all(np.abs(small - large) <= 4 * sigma + 1e-9)

    def test_rejects_zero_samples(self):
        with pytest.raises(ValueError):
            activation_probability_map(LatticeSpec(4, 4, 0.5, 0.5), ProbabilityProfile(0, 0), 4, 0, seed=0)


class TestExport:
    """Test cases for mask and map files"""

    def test_mask_text_round_trip(self, tmp_path):
        lattice = LatticeSpec(10, 9, 0.5, 0.5)
        mask = generate_mask(lattice, ProbabilityProfile(1, 1), 16, seed=3)
        path = tmp_path / "mask.txt"
        write_mask_text(mask, str(path))
        assert read_mask_text(str(path)) == mask
        lines = path.read_text(encoding='utf-8').splitlines()
        assert len(lines) == 10 and all(len(line) == 9 for line in lines)

    def test_mask_text_rows_top_first(self):
        grid = np.zeros((2, 3), dtype=bool)
        grid[0, 1] = True
        assert mask_to_text(ActivationMask(grid)) == "010\n000\n"

    def test_mask_text_rejects_ragged_rows(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("010\n01\n", encoding='utf-8')
        with pytest.raises(ValueError):
            read_mask_text(str(path))

    def test_mask_text_rejects_other_characters(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("012\n", encoding='utf-8')
        with pytest.raises(ValueError):
            read_mask_text(str(path))

    def test_activation_map_round_trip(self, tmp_path):
        probabilities = activation_probability_map(LatticeSpec(8, 7, 0.5, 0.5), ProbabilityProfile(1, 0),
                                                   8, n_samples=7, seed=2)
        path = tmp_path / "map.csv"
        write_activation_map(probabilities, str(path))
        assert path.read_text(encoding='utf-8').splitlines()[0] == "row,col,probability"
        loaded = read_activation_map(str(path), shape=probabilities.shape)
        assert np.allclose(loaded, probabilities, atol=5e-7)
        assert np.array_equal(loaded, loaded[:, ::-1])
        assert np.array_equal(loaded, loaded[::-1, :])
