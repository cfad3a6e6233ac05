"""Point generation, test surfaces, splitting and CSV ingestion."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rbftune.data import (
    halton_points,
    load_csv,
    random_points,
    eval_test_function,
    train_val_split,
)
from rbftune.exceptions import ConfigurationError


class TestHalton:
    def test_first_three_points_in_2d(self):
        # Radical inverses in bases 2 and 3, starting at index 1.
        expected = np.array([[1 / 2, 1 / 3], [1 / 4, 2 / 3], [3 / 4, 1 / 9]])
        np.testing.assert_allclose(halton_points(3, 2), expected, rtol=1e-15)

    def test_first_point_in_1d(self):
        np.testing.assert_array_equal(halton_points(1, 1), [[0.5]])

    def test_deterministic(self):
        np.testing.assert_array_equal(halton_points(200, 3), halton_points(200, 3))

    def test_prefix_property(self):
        # The first n points do not depend on how many are requested.
        np.testing.assert_array_equal(halton_points(50, 2), halton_points(80, 2)[:50])

    @pytest.mark.parametrize("n,dim", [(1, 1), (100, 2), (37, 5)])
    def test_inside_unit_cube(self, n, dim):
        pts = halton_points(n, dim)
        assert pts.shape == (n, dim)
        assert pts.min() >= 0.0 and pts.max() <= 1.0

    def test_points_distinct(self):
        pts = halton_points(500, 2)
        assert len(np.unique(pts, axis=0)) == 500

    def test_preconditions(self):
        with pytest.raises(ValueError):
            halton_points(0, 2)
        with pytest.raises(ValueError):
            halton_points(5, 0)


class TestRandomPoints:
    def test_same_seed_bitwise_identical(self):
        a = random_points(100, 2, seed=7)
        b = random_points(100, 2, seed=7)
        np.testing.assert_array_equal(a, b)

    def test_different_seeds_differ(self):
        assert not np.array_equal(random_points(50, 2, 0), random_points(50, 2, 1))

    def test_inside_unit_cube(self):
        pts = random_points(1000, 3, seed=2)
        assert pts.min() >= 0.0 and pts.max() <= 1.0

    def test_zero_points_rejected(self):
        with pytest.raises(ValueError):
            random_points(0, 2, seed=0)


class TestSurfaces:
    def test_dome_at_center(self):
        # Radicand is exactly 64 at the center: sqrt(64)/9 - 0.5 = 8/9 - 1/2.
        value = eval_test_function("f2", [[0.5, 0.5]])[0]
        np.testing.assert_allclose(value, 8 / 9 - 0.5, rtol=1e-15)

    def test_dome_at_edge_midpoint(self):
        # radicand = 64 - 81 * 0.25 = 43.75
        value = eval_test_function("f2", [[0.5, 1.0]])[0]
        np.testing.assert_allclose(value, np.sqrt(43.75) / 9 - 0.5, rtol=1e-15)
        np.testing.assert_allclose(value, 0.23493091974016405, rtol=1e-14)

    def test_peaks_against_high_precision_oracle(self):
        # Frozen from an mpmath evaluation of the four-term sum at 40 digits.
        cases = {
            (0.0, 0.0): 0.72693242777717014986,
            (0.5, 0.5): 0.47326290213707824782,
            (1.0, 1.0): 0.10152416240946289938,
            (0.25, 0.75): 0.33897448533882511807,
            (0.1, 0.9): 0.29457615992897598519,
        }
        pts = np.array(list(cases))
        np.testing.assert_allclose(
            eval_test_function("f1", pts), list(cases.values()), rtol=1e-14
        )

    def test_dome_radially_symmetric_about_center(self):
        rng = np.random.default_rng(3)
        offsets = rng.uniform(-0.5, 0.5, size=(50, 2))
        plus = eval_test_function("f2", 0.5 + offsets)
        minus = eval_test_function("f2", 0.5 - offsets)
        np.testing.assert_allclose(plus, minus, rtol=1e-14)

    def test_outside_domain_rejected(self):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            eval_test_function("f1", [[1.2, 0.5]])
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            eval_test_function("f2", [[0.5, -0.1]])

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError, match="unknown test function"):
            eval_test_function("f3", [[0.5, 0.5]])


class TestSplit:
    def test_eighty_twenty_sizes_at_1000(self):
        X = random_points(1000, 2, seed=0)
        y = np.arange(1000.0)
        X_tr, y_tr, X_val, y_val, _ = train_val_split(X, y, seed=1)
        assert len(X_tr) == len(y_tr) == 800
        assert len(X_val) == len(y_val) == 200

    @given(n=st.integers(2, 500), fraction=st.sampled_from([0.5, 0.8, 0.9]))
    def test_floor_ceil_law(self, n, fraction):
        X = np.column_stack([np.arange(n, dtype=float), np.zeros(n)])
        y = np.arange(n, dtype=float)
        X_tr, _, X_val, _, _ = train_val_split(X, y, train_fraction=fraction, seed=0)
        assert len(X_tr) == int(np.floor(fraction * n))
        assert len(X_val) == int(np.ceil((1 - fraction) * n))

    def test_tiny_split(self):
        X = np.column_stack([np.arange(5.0), np.zeros(5)])
        X_tr, _, X_val, _, _ = train_val_split(X, np.arange(5.0), seed=0)
        assert len(X_tr) == 4 and len(X_val) == 1

    def test_same_seed_same_partition(self):
        X = random_points(60, 2, seed=9)
        y = np.arange(60.0)
        first = train_val_split(X, y, seed=42)
        second = train_val_split(X, y, seed=42)
        for a, b in zip(first[:4], second[:4]):
            np.testing.assert_array_equal(a, b)

    def test_multiset_preserved(self):
        X = random_points(41, 2, seed=5)
        y = np.arange(41.0)
        X_tr, y_tr, X_val, y_val, _ = train_val_split(X, y, seed=3)
        rebuilt = np.concatenate([y_tr, y_val])
        np.testing.assert_array_equal(np.sort(rebuilt), y)
        together = np.vstack([X_tr, X_val])
        order = np.lexsort(together.T)
        np.testing.assert_array_equal(together[order], X[np.lexsort(X.T)])

    def test_centers_follow_their_locations(self):
        X = random_points(50, 2, seed=8)
        y = np.arange(50.0)
        centers = X[::5]
        X_tr, _, X_val, _, centers_tr = train_val_split(X, y, centers, seed=2)
        train_keys = {row.tobytes() for row in X_tr}
        expected = [c for c in centers if c.tobytes() in train_keys]
        np.testing.assert_array_equal(centers_tr, np.array(expected))

    def test_foreign_centers_rejected(self):
        X = random_points(20, 2, seed=0)
        with pytest.raises(ConfigurationError, match="subset"):
            train_val_split(X, np.zeros(20), centers=np.array([[2.0, 2.0]]), seed=0)

    def test_bad_fraction_rejected(self):
        X = random_points(10, 2, seed=0)
        with pytest.raises(ValueError):
            train_val_split(X, np.zeros(10), train_fraction=1.0, seed=0)


class TestLoadCsv:
    def test_three_row_file(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("0,0,1\n0.5,0.5,2\n1,1,3\n")
        X, y = load_csv(path, dim=2)
        np.testing.assert_array_equal(X, [[0, 0], [0.5, 0.5], [1, 1]])
        np.testing.assert_array_equal(y, [1, 2, 3])

    def test_crlf_and_header(self, tmp_path):
        path = tmp_path / "data.csv"
        path.write_text("x,y,z\r\n0,0,1\r\n1,1,3\r\n")
        X, y = load_csv(path, dim=2, header=True)
        assert len(X) == 2

    def test_short_row_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0,0\n")
        with pytest.raises(ValueError, match="row 1"):
            load_csv(path, dim=2)

    def test_non_numeric_field_names_line(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0,0,1\n0.5,oops,2\n")
        with pytest.raises(ValueError, match="row 2"):
            load_csv(path, dim=2)

    def test_duplicate_locations_rejected_with_indices(self, tmp_path):
        path = tmp_path / "dup.csv"
        path.write_text("0,0,1\n0.5,0.5,2\n0,0,3\n")
        with pytest.raises(ValueError, match="0 and 2"):
            load_csv(path, dim=2)

    def test_duplicates_downgraded_to_warning_when_allowed(self, tmp_path):
        path = tmp_path / "dup.csv"
        path.write_text("0,0,1\n0,0,3\n")
        with pytest.warns(UserWarning, match="duplicate"):
            X, _ = load_csv(path, dim=2, allow_duplicates=True)
        assert len(X) == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_csv(tmp_path / "nope.csv", dim=2)
