import numpy as np
import pytest

from tukey_privacy.conftest import uniform_points
from tukey_privacy.depth.exceptions import EmptyRegion
from tukey_privacy.depth.tukey import tukey_depth
from tukey_privacy.estimators.params import DPParams
from tukey_privacy.estimators.point import dp_pair_at_distance, dp_point_in_region
from tukey_privacy.privacy.noise import NoiseMode


class TestPointInRegion:
    def test_square_center(self, square_points):
        report = dp_point_in_region(square_points, 2, DPParams(epsilon=1.0))
        np.testing.assert_allclose(report.value, [0.5, 0.5])
        assert report.details["depth"] == 2

    def test_depth_one(self, uniform_2d):
        report = dp_point_in_region(uniform_2d, 1, DPParams(epsilon=1.0))
        assert tukey_depth(report.value, uniform_2d) >= 1

    def test_empty_region(self, square_points):
        with pytest.raises(EmptyRegion):
            dp_point_in_region(square_points, 3, DPParams(epsilon=1.0))

    def test_budget_split(self, uniform_2d):
        report = dp_point_in_region(uniform_2d, 1, DPParams(epsilon=2.0))
        assert [entry.epsilon for entry in report.budget.entries] == [1.0, 1.0]
        assert report.budget.epsilon_spent == pytest.approx(2.0)

    def test_three_dimensions(self):
        points = uniform_points(20, 3, seed=3, grid_exponent=6)
        report = dp_point_in_region(points, 2, DPParams(epsilon=1.0))
        assert len(report.budget.entries) == 3
        assert tukey_depth(report.value, points) >= 1

    def test_seeded_utility(self):
        points = uniform_points(100, 2, seed=21)
        successes = 0
        for seed in range(20):
            report = dp_point_in_region(points, 5, DPParams(epsilon=10.0, mode=NoiseMode.seeded(seed)))
            successes += tukey_depth(report.value, points) >= 5 - report.delta_depth
        assert successes >= 18

    def test_deterministic(self, uniform_2d):
        params = DPParams(epsilon=1.0, mode=NoiseMode.seeded(5))
        first = dp_point_in_region(uniform_2d, 3, params).value
        second = dp_point_in_region(uniform_2d, 3, params).value
        np.testing.assert_array_equal(first, second)


class TestPairAtDistance:
    def test_square_full_span(self, square_points):
        report = dp_pair_at_distance(square_points, 1, 1.0, DPParams(epsilon=1.0))
        x, y = report.value
        assert (x[0], y[0]) == (0.0, 1.0)
        assert min(report.details["depths"]) >= 1
        assert not report.details["low_depth"]

    def test_infeasible_separation(self, square_points):
        report = dp_pair_at_distance(square_points, 1, 1.5, DPParams(epsilon=1.0))
        x, y = report.value
        assert y[0] - x[0] == pytest.approx(1.5)
        assert report.details["low_depth"]

    def test_zero_separation_center(self, square_points):
        report = dp_pair_at_distance(square_points, 2, 0.0, DPParams(epsilon=1.0))
        x, y = report.value
        np.testing.assert_allclose(x, [0.5, 0.5])
        np.testing.assert_allclose(y, [0.5, 0.5])

    def test_budget(self, uniform_2d):
        report = dp_pair_at_distance(uniform_2d, 1, 0.25, DPParams(epsilon=3.0))
        assert report.budget.invocations == 3
        assert report.budget.epsilon_spent == pytest.approx(3.0)

