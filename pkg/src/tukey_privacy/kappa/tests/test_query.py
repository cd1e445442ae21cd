import numpy as np
import pytest

from tukey_privacy.conftest import uniform_points
from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.kappa.query import build_query_table, q_query, q_sensitivity_audit


class TestQuery:
    @pytest.mark.parametrize("kappa", [1, 8])
    def test_ends_are_zero(self, kappa):
        assert q_query(np.ones(8), kappa, 8) == 0

    @pytest.mark.parametrize("kappa", range(1, 9))
    def test_constant_volumes(self, kappa):
        assert q_query(np.ones(8), kappa, 8) == min(kappa - 1, 8 - kappa)

    @pytest.mark.parametrize("kappa", range(1, 9))
    def test_halving_volumes(self, kappa):
        volumes = 2.0 ** -np.arange(1, 9)
        assert q_query(volumes, kappa, 8) == 0

    def test_empty_regions_compare_equal(self):
        assert q_query([1.0, 1.0, 0.0, 0.0, 0.0], 4, 5) == 1

    def test_short_volume_list(self):
        assert q_query([1.0, 0.9], 3, 5) == 0

    def test_range(self):
        with pytest.raises(ValidationError):
            q_query(np.ones(4), 5, 4)


class TestTable:
    def test_square(self, square_points):
        table = build_query_table(square_points, 4)
        np.testing.assert_allclose(table.volumes, [1.0, 0.0, 0.0, 0.0])
        assert table.q.tolist() == [0, 0, 1, 0]
        assert table.best == 3
        assert table.max_q == 1

    def test_invariants(self, uniform_2d):
        table = build_query_table(uniform_2d, 20)
        assert table.q[0] == 0 and table.q[-1] == 0
        assert np.all(table.q >= 0)
        assert np.all(np.abs(np.diff(table.q)) <= 1)

    def test_to_dict(self):
        report = build_query_table([1.0, 1.0, 1.0], 3).to_dict()
        assert report["q"] == [0, 1, 0]


class TestSensitivityAudit:
    def test_random_neighbours(self):
        rng = np.random.default_rng(3)
        for seed in range(5):
            points = uniform_points(10, 2, seed=seed, grid_exponent=8)
            for _ in range(4):
                x = np.round(rng.random(2) * 256) / 256
                assert q_sensitivity_audit(points, x, 6) <= 1

    def test_duplicate_point(self):
        points = uniform_points(10, 2, seed=1, grid_exponent=8)
        assert q_sensitivity_audit(points, points.points[3], 6) <= 1

    def test_two_indices(self):
        points = uniform_points(10, 2, seed=2, grid_exponent=8)
        assert q_sensitivity_audit(points, [0.5, 0.5], 2) <= 1
