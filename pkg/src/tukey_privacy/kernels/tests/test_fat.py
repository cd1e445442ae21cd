import math

import numpy as np
import pytest

from tukey_privacy.conftest import SQUARE_CORNERS, uniform_points
from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.regions import region_chain
from tukey_privacy.depth.tukey import tukey_depth
from tukey_privacy.estimators.params import DPParams
from tukey_privacy.geometry.directions import angle_cover
from tukey_privacy.kernels.fat import cover_scaling, fat_constants, kernel_fat


def params(alpha=0.2, **kwargs):
    return DPParams(epsilon=1.0, delta=1e-6, alpha=alpha, **kwargs)


@pytest.fixture
def square_kernel(square_points):
    return kernel_fat(square_points, 1, params(), c=math.sqrt(2))


class TestDisabled:
    def test_square_points_are_deep(self, square_kernel, square_points):
        for point in square_kernel.points:
            assert tukey_depth(point, square_points) >= 1

    def test_square_points_on_slices(self, square_kernel):
        cover = angle_cover(square_kernel.details["zeta"], 2)
        base = square_kernel.base
        for direction, point, reach in zip(
            cover.directions, square_kernel.points[1:], square_kernel.details["headroom"]
        ):
            assert point @ direction == pytest.approx(base @ direction + reach, abs=1e-9)

    def test_base_is_center(self, square_kernel):
        np.testing.assert_allclose(square_kernel.base, [0.5, 0.5])
        np.testing.assert_allclose(square_kernel.points[0], [0.5, 0.5])

    def test_reaches_the_boundary(self, square_kernel):
        # Along each axis the kernel gets within a factor 1 - alpha of the edge
        extent = square_kernel.points.max(axis=0) - 0.5
        assert np.all(extent >= (1 - 0.2) * 0.5)

    def test_singleton(self, square_points):
        result = kernel_fat(square_points, 2, params(), c=math.sqrt(2))
        np.testing.assert_allclose(result.base, [0.5, 0.5])
        assert all(reach == 0.0 for reach in result.details["headroom"])

    def test_membership_on_random_data(self):
        points = uniform_points(30, 2, seed=8)
        result = kernel_fat(region_chain(points), 2, params(alpha=0.3), c=2.0)
        assert min(result.details["depths"]) >= 2
        for point in result.points:
            assert tukey_depth(point, points) >= 2


class TestAccounting:
    def test_invocations(self, square_kernel):
        cover_size = len(angle_cover(square_kernel.details["zeta"], 2))
        assert square_kernel.details["invocations"] == 2 * (cover_size + 1)
        assert square_kernel.budget.invocations == 2 * (cover_size + 1)

    def test_per_call_charge(self, square_kernel):
        epsilon0 = square_kernel.details["epsilon0"]
        delta0 = square_kernel.details["delta0"]
        for entry in square_kernel.budget.entries:
            assert entry.epsilon == pytest.approx(epsilon0)
            assert entry.delta == delta0

    def test_advanced_total(self, square_kernel):
        epsilon, delta = square_kernel.details["advanced"]
        assert epsilon == pytest.approx(0.5)
        assert delta == pytest.approx(1e-6)

    def test_gamma(self, square_points):
        chain = region_chain(square_points)
        constants = fat_constants(chain, params(), c=math.sqrt(2))
        assert constants["zeta"] == pytest.approx(0.2 / 4)
        assert constants["gamma_kernel"] > constants["alpha_qc"]

    def test_needs_delta(self, square_points):
        with pytest.raises(ValidationError):
            kernel_fat(square_points, 1, DPParams(epsilon=1.0), c=2.0)


class TestScaling:
    @pytest.mark.parametrize("alpha", [0.05, 0.2, 0.5, 0.9])
    def test_overall_factor_within_alpha(self, alpha):
        projection_alpha, pullback = cover_scaling(alpha)
        assert projection_alpha == pytest.approx(alpha / 2)
        assert pullback == pytest.approx(1 - alpha / 2)
        assert pullback * (1 - projection_alpha) >= 1 - alpha

    def test_reported_in_details(self, square_kernel):
        assert square_kernel.details["projection_alpha"] == pytest.approx(0.1)
        assert square_kernel.details["pullback"] == pytest.approx(0.9)

    def test_headroom_keeps_overall_factor(self, square_kernel):
        corners = np.array(SQUARE_CORNERS)
        cover = angle_cover(square_kernel.details["zeta"], 2)
        for direction, reach in zip(cover.directions, square_kernel.details["headroom"]):
            extent = float(np.max((corners - square_kernel.base) @ direction))
            assert reach >= (1 - 0.2) * extent - 1e-9
