import math

import numpy as np
import pytest

from tukey_privacy.conftest import lp_feasible
from tukey_privacy.geometry.directions import orthogonal_complement
from tukey_privacy.geometry.exceptions import UnsupportedDimension
from tukey_privacy.geometry.measures import (
    boundary_measure,
    boxes_overlapping,
    chebyshev_center,
    diameter_exact,
    directional_span,
    min_enclosing_ball,
    volume,
    width_exact,
)
from tukey_privacy.geometry.polytope import box_polytope, convex_hull, hull_of_points

TRIANGLE = [[0, 0], [1, 0], [0, 1]]


def random_rotation(rng, dim):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)))
    return q * np.sign(np.diag(r))


class TestVolume:
    def test_unit_square(self):
        assert volume(box_polytope([0, 0], [1, 1])) == pytest.approx(1.0)

    def test_triangle(self):
        assert volume(convex_hull(TRIANGLE)) == pytest.approx(0.5)

    def test_unit_cube(self):
        assert volume(box_polytope([0, 0, 0], [1, 1, 1])) == pytest.approx(1.0)

    def test_degenerate_is_zero(self):
        assert volume(hull_of_points([[0, 0], [1, 1]])) == 0.0

    def test_four_dimensions_unsupported(self):
        with pytest.raises(UnsupportedDimension):
            volume(box_polytope([0] * 4, [1] * 4))

    @pytest.mark.parametrize("dim", [2, 3])
    def test_sandwich_with_chord_and_shadow(self, rng, dim):
        # A * l / d <= vol <= A * l, with l the longest chord along u and A the shadow volume
        for _ in range(25):
            body = convex_hull(rng.random((15, dim)))
            u = rng.normal(size=dim)
            u /= np.linalg.norm(u)
            basis = orthogonal_complement(u)
            shadow = body.project(basis)
            shadow_volume = volume(shadow) if dim == 3 else float(np.ptp(body.vertices @ basis))
            chord = _longest_chord(body, u)
            vol = volume(body)
            assert shadow_volume * chord / dim <= vol + 1e-9
            assert vol <= shadow_volume * chord + 1e-9


def _longest_chord(body, u):
    """Longest segment inside body parallel to u, via LP on (x, t)."""
    from tukey_privacy.geometry.lp import lp_solve_matrix

    dim = body.dim
    A, b = body.A, body.b
    rows = np.vstack([np.hstack([A, np.zeros((len(A), 1))]), np.hstack([A, (A @ u)[:, None]])])
    rhs = np.concatenate([b, b])
    objective = np.zeros(dim + 1)
    objective[-1] = 1.0
    value, _ = lp_solve_matrix(objective, rows, rhs, sense="max")
    return value


class TestDiameter:
    def test_unit_square(self):
        length, p, q = diameter_exact(box_polytope([0, 0], [1, 1]))
        assert length == pytest.approx(math.sqrt(2))
        assert np.allclose(np.abs(p - q), [1, 1])

    def test_thin_rectangle(self):
        length, _, _ = diameter_exact(box_polytope([0, 0], [1, 0.01]))
        assert length == pytest.approx(math.sqrt(1.0001))

    def test_matches_pair_scan(self, rng):
        hull = convex_hull(rng.random((20, 2)))
        brute = max(
            np.linalg.norm(p - q) for p in hull.vertices for q in hull.vertices
        )
        assert diameter_exact(hull)[0] == pytest.approx(brute)


class TestWidth:
    def test_unit_square(self):
        assert width_exact(box_polytope([0, 0], [1, 1]))[0] == pytest.approx(1.0)

    def test_thin_rectangle(self):
        width, direction = width_exact(box_polytope([0, 0], [1, 0.01]))
        assert width == pytest.approx(0.01)
        assert abs(direction[1]) == pytest.approx(1.0)

    def test_matches_dense_sweep_2d(self, rng):
        for _ in range(20):
            hull = convex_hull(rng.random((12, 2)))
            angles = np.radians(np.arange(0, 180, 1.0))
            sweep = directional_span(hull.vertices, np.column_stack([np.cos(angles), np.sin(angles)]))
            width, _ = width_exact(hull)
            diameter = diameter_exact(hull)[0]
            assert width <= sweep.min() + 1e-9
            assert sweep.min() - width <= 2 * (1 - math.cos(math.radians(1))) * diameter + 1e-9

    def test_matches_dense_sweep_3d(self, rng):
        hull = convex_hull(rng.random((12, 3)))
        polar = np.radians(np.arange(0.5, 180, 1.0))
        azimuth = np.radians(np.arange(0, 360, 1.0))
        p, a = np.meshgrid(polar, azimuth)
        sweep_directions = np.column_stack(
            [np.cos(p).ravel(), (np.sin(p) * np.cos(a)).ravel(), (np.sin(p) * np.sin(a)).ravel()]
        )
        sweep = directional_span(hull.vertices, sweep_directions).min()
        width, _ = width_exact(hull)
        assert width <= sweep + 1e-9
        assert sweep - width <= 2 * (1 - math.cos(math.radians(1))) * diameter_exact(hull)[0] + 1e-3

    def test_cube(self):
        assert width_exact(box_polytope([0, 0, 0], [1, 1, 1]))[0] == pytest.approx(1.0)

    def test_degenerate_is_zero(self):
        width, direction = width_exact(hull_of_points([[0, 0], [1, 1]]))
        assert width == 0.0
        assert np.isclose(abs(direction @ np.array([1, -1]) / math.sqrt(2)), 1.0)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_rigid_motion_invariance(self, rng, dim):
        for _ in range(10):
            hull = convex_hull(rng.random((15, dim)))
            rotation = random_rotation(rng, dim)
            moved = hull.affine(rotation, rng.normal(size=dim))
            assert width_exact(moved)[0] == pytest.approx(width_exact(hull)[0], abs=1e-7)
            assert diameter_exact(moved)[0] == pytest.approx(diameter_exact(hull)[0], abs=1e-7)
            assert width_exact(hull)[0] <= diameter_exact(hull)[0]


class TestChebyshevCenter:
    def test_unit_square(self):
        center, radius = chebyshev_center(box_polytope([0, 0], [1, 1]))
        np.testing.assert_allclose(center, [0.5, 0.5], atol=1e-9)
        assert radius == pytest.approx(0.5)

    def test_triangle_incircle(self):
        _, radius = chebyshev_center(convex_hull(TRIANGLE))
        assert radius == pytest.approx((2 - math.sqrt(2)) / 2)

    def test_unit_cube(self):
        _, radius = chebyshev_center(box_polytope([0, 0, 0], [1, 1, 1]))
        assert radius == pytest.approx(0.5)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_inradius_lower_bound(self, rng, dim):
        for _ in range(20):
            hull = convex_hull(rng.random((12, dim)))
            width, _ = width_exact(hull)
            _, radius = chebyshev_center(hull)
            assert radius >= width * math.sqrt(dim + 2) / (2 * dim + 2) - 1e-9


class TestEnclosingBall:
    def test_square_corners(self):
        center, radius = min_enclosing_ball(np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float))
        assert radius == pytest.approx(math.sqrt(2) / 2)
        np.testing.assert_allclose(center, [0.5, 0.5], atol=1e-9)

    def test_single_point(self):
        _, radius = min_enclosing_ball(np.array([[0.3, 0.4]]))
        assert radius == 0.0

    def test_contains_all_points(self, rng):
        points = rng.random((40, 3))
        center, radius = min_enclosing_ball(points)
        assert np.linalg.norm(points - center, axis=1).max() <= radius + 1e-9


def test_boundary_measure():
    assert boundary_measure(box_polytope([0, 0], [1, 1])) == pytest.approx(4.0)
    assert boundary_measure(box_polytope([0, 0, 0], [1, 1, 1])) == pytest.approx(6.0)


@pytest.mark.parametrize("dim", [2, 3])
def test_box_overlap_agrees_with_lp(rng, dim):
    hull = convex_hull(rng.random((10, dim)) * 0.6 + 0.2)
    lows = rng.random((200, dim))
    highs = lows + 0.1
    mask = boxes_overlapping(hull, lows, highs)
    for low, high, hit in zip(lows, highs, mask):
        assert hit == lp_feasible(hull, low, high)
