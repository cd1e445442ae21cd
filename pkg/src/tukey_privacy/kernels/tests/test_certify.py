import math

import numpy as np
import pytest

from tukey_privacy.geometry.measures import chebyshev_center
from tukey_privacy.geometry.polytope import box_polytope, convex_hull
from tukey_privacy.kernels.certify import kernel_certify


def equilateral(center, edge):
    radius = edge / math.sqrt(3)
    angles = np.radians([90, 210, 330])
    return convex_hull(np.asarray(center) + radius * np.column_stack([np.cos(angles), np.sin(angles)]))


class TestCertify:
    def test_identity_kernel(self):
        square = box_polytope([0, 0], [1, 1])
        certification = kernel_certify(square.vertices, square, square, 0.0)
        assert certification.inner.alpha == 0.0
        assert certification.outer.alpha == 0.0
        assert certification.passes

    def test_scaled_inner(self):
        triangle = equilateral([0.5, 0.5], 0.6)
        center, _ = chebyshev_center(triangle)
        shrunk = triangle.scaled(0.9, center)
        certification = kernel_certify(shrunk.vertices, triangle, triangle, 0.1 + 1e-6)
        assert certification.inner.alpha == pytest.approx(0.1, abs=1e-6)
        assert certification.passes

    def test_scaled_outer(self):
        square = box_polytope([0.25, 0.25], [0.75, 0.75])
        grown = square.scaled(1.2, np.array([0.5, 0.5]))
        certification = kernel_certify(grown.vertices, square, square, 0.2 + 1e-6)
        assert certification.outer.alpha == pytest.approx(0.2, abs=1e-6)
        assert certification.inner.alpha == 0.0

    def test_inscribed_ball_counterexample(self):
        r = 0.3
        triangle = equilateral([0.5, 0.45], 2 * r)
        center = triangle.centroid
        angles = np.radians(np.arange(0, 360, 0.5))
        disk = center + 0.99 * r * np.column_stack([np.cos(angles), np.sin(angles)])
        certification = kernel_certify(disk, triangle, triangle, 0.01)
        assert not certification.passes
        assert certification.inner.alpha > 0.1
        assert np.linalg.norm(certification.inner.witness) == pytest.approx(1.0)

    def test_claimed_bounds(self):
        square = box_polytope([0, 0], [1, 1])
        certification = kernel_certify(square.vertices, square, square, 0.1)
        assert certification.claimed_inner == pytest.approx(0.2 * math.sqrt(2.5))
        assert certification.claimed_outer == pytest.approx(0.1 / 0.9 * (1 + 4 * math.sqrt(2.5)))

    def test_single_point(self):
        square = box_polytope([0, 0], [1, 1])
        certification = kernel_certify([[0.5, 0.5]], square, square, 0.5)
        assert certification.inner.alpha == pytest.approx(1.0)

    def test_empty(self):
        square = box_polytope([0, 0], [1, 1])
        certification = kernel_certify(np.zeros((0, 2)), square, square, 0.5)
        assert math.isinf(certification.inner.alpha)
        assert not certification.passes

    def test_report(self):
        square = box_polytope([0, 0], [1, 1])
        report = kernel_certify(square.vertices, square, square, 0.1).to_dict()
        assert report["passes"] is True
        assert set(report["shifts"]) == {"chebyshev", "centroid"}
