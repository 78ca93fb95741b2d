import json

import numpy as np
import pytest

import lielearn as ll
from lielearn import (
    DatasetFormatError,
    flow,
    generate_pairs,
    read_dataset,
    sample_unit_sphere,
    so2_generator,
    write_dataset,
)

J = so2_generator()


def test_so2_generator_value():
    np.testing.assert_array_equal(J, [[0.0, 1.0], [-1.0, 0.0]])


def test_so2_generator_squares_to_minus_identity():
    np.testing.assert_array_equal(J @ J, -np.eye(2))
    assert ll.frobenius_inner(J, J) == 2.0


class TestUnitSphere:
    def test_unit_norm(self):
        rng = np.random.default_rng(0)
        for n in (1, 2, 3, 7):
            for _ in range(50):
                v = sample_unit_sphere(n, rng)
                assert abs(np.linalg.norm(v) - 1.0) <= 1e-12

    def test_mean_near_zero(self):
        rng = np.random.default_rng(123)
        draws = np.array([sample_unit_sphere(2, rng) for _ in range(10_000)])
        assert np.abs(draws.mean(axis=0)).max() < 0.05

    def test_same_seed_same_sequence(self):
        a = [sample_unit_sphere(2, np.random.default_rng(5)) for _ in range(1)]
        b = [sample_unit_sphere(2, np.random.default_rng(5)) for _ in range(1)]
        np.testing.assert_array_equal(a, b)
        seq1 = np.random.default_rng(9)
        seq2 = np.random.default_rng(9)
        for _ in range(10):
            np.testing.assert_array_equal(sample_unit_sphere(3, seq1), sample_unit_sphere(3, seq2))


class TestGeneratePairs:
    def test_toy_preset_stays_on_circle(self, toy_dataset):
        assert len(toy_dataset) == 1000
        assert np.abs(np.linalg.norm(toy_dataset.x, axis=1) - 1.0).max() <= 1e-10
        assert np.abs(np.linalg.norm(toy_dataset.y, axis=1) - 1.0).max() <= 1e-10

    def test_angle_equals_t_true(self, toy_dataset):
        # oracle: planar angle via atan2 of cross/dot
        x, y, t = toy_dataset.x, toy_dataset.y, toy_dataset.t_true
        cross = x[:, 0] * y[:, 1] - x[:, 1] * y[:, 0]
        dot = np.sum(x * y, axis=1)
        ang = np.abs(np.arctan2(cross, dot))
        assert np.abs(ang - t).max() <= 1e-9

    def test_t_support_half_open(self, toy_dataset):
        t = toy_dataset.t_true
        assert t.min() > 0.0
        assert t.max() <= np.pi / 30

    def test_consistent_with_flow(self, toy_dataset):
        for i in range(0, 1000, 97):
            p = toy_dataset.pair(i)
            np.testing.assert_allclose(p.y, flow(J, p.t_true, p.x), atol=1e-10)

    def test_linearization_remainder_bound(self, toy_dataset):
        # exact bound t^2/2 has true margin ~t^4/72, which for small t drops
        # below the exponential's 1e-12 series tolerance; allow that much slack
        x, y, t = toy_dataset.x, toy_dataset.y, toy_dataset.t_true
        resid = np.linalg.norm(y - x - t[:, None] * (x @ J.T), axis=1)
        assert np.all(resid <= t**2 / 2 + 1e-12)

    def test_single_pair(self):
        ds = generate_pairs(J, 1, 0.0, 0.1, seed=3)
        assert len(ds) == 1 and ds.n == 2

    def test_degenerate_interval_rejected(self):
        with pytest.raises(ValueError):
            generate_pairs(J, 10, 0.5, 0.5, seed=0)

    def test_zero_count_rejected(self):
        with pytest.raises(ValueError):
            generate_pairs(J, 0, 0.0, 0.1, seed=0)

    def test_general_generator(self):
        a = np.diag([1.0, 2.0, -1.0])
        ds = generate_pairs(a, 10, 0.0, 0.05, seed=1)
        assert ds.n == 3
        p = ds.pair(4)
        np.testing.assert_allclose(p.y, flow(a, p.t_true, p.x), atol=1e-10)


class TestDatasetIO:
    def test_round_trip_bit_identical(self, toy_dataset, tmp_path):
        path = tmp_path / "toy.csv"
        write_dataset(toy_dataset, path)
        back = read_dataset(path)
        np.testing.assert_array_equal(back.x, toy_dataset.x)
        np.testing.assert_array_equal(back.y, toy_dataset.y)
        np.testing.assert_array_equal(back.t_true, toy_dataset.t_true)
        assert back.provenance.seed == 42
        np.testing.assert_array_equal(back.provenance.generator, J)

    def test_write_is_deterministic(self, tmp_path):
        d1 = generate_pairs(J, 50, 0.0, 0.1, seed=11)
        d2 = generate_pairs(J, 50, 0.0, 0.1, seed=11)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        write_dataset(d1, p1)
        write_dataset(d2, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_ragged_row_names_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,x1,y0,y1\n1,2,3,4\n1,2,3\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="row 2"):
            read_dataset(path)

    def test_non_numeric_field_names_row(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,x1,y0,y1\n1,2,oops,4\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="row 1"):
            read_dataset(path)

    def test_malformed_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x0,y0,y1\n1,2,3\n", encoding="utf-8")
        with pytest.raises(DatasetFormatError, match="header"):
            read_dataset(path)

    def test_t_column_optional(self, tmp_path):
        with_t = tmp_path / "with_t.csv"
        with_t.write_text("x0,x1,y0,y1,t\n1,0,0,1,0.5\n", encoding="utf-8")
        ds = read_dataset(with_t)
        assert ds.t_true is not None and ds.t_true[0] == 0.5

        without_t = tmp_path / "without_t.csv"
        without_t.write_text("x0,x1,y0,y1\n1,0,0,1\n", encoding="utf-8")
        assert read_dataset(without_t).t_true is None

    def test_missing_sidecar_is_fine(self, tmp_path):
        path = tmp_path / "plain.csv"
        path.write_text("x0,x1,y0,y1\n1,0,0,1\n", encoding="utf-8")
        assert read_dataset(path).provenance is None

    def test_sidecar_schema(self, tmp_path):
        ds = generate_pairs(J, 5, 0.0, 0.1, seed=2)
        path = tmp_path / "small.csv"
        write_dataset(ds, path)
        meta = json.loads((tmp_path / "small.meta.json").read_text())
        assert meta["n"] == 2 and meta["count"] == 5
        assert meta["seed"] == 2
        assert meta["t_max"] == 0.1
        assert meta["generator"] == [[0, 1], [-1, 0]]
