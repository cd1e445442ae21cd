import itertools
import math

import numpy as np
import pytest

from tukey_privacy.conftest import SQUARE_CORNERS, uniform_points
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import region_chain
from tukey_privacy.depth.tukey import tukey_depth
from tukey_privacy.core.exceptions import OffGridPoint, ValidationError


def brute_force_depth_2d(x, points):
    """Minimum closed-halfplane count over directions orthogonal to pairwise differences."""
    offsets = points - x
    candidates = []
    for w in offsets:
        if np.linalg.norm(w) > 0:
            normal = np.array([-w[1], w[0]])
            candidates += [normal, -normal]
    angles = np.radians(np.arange(0, 360, 0.25))
    candidates += list(np.column_stack([np.cos(angles), np.sin(angles)]))
    best = len(points)
    for u in candidates:
        u = u / np.linalg.norm(u)
        # Rotate a hair to both sides: counts on open arcs
        for eps in (1e-7, -1e-7):
            v = np.array([u[0] * math.cos(eps) - u[1] * math.sin(eps), u[0] * math.sin(eps) + u[1] * math.cos(eps)])
            best = min(best, int(np.sum(offsets @ v <= 1e-12)))
    return best


def _open_cell_minimum(vectors, normal):
    """Fewest vectors strictly on one side of a generic line through 0 in the plane orthogonal to normal."""
    best = len(vectors)
    for a in vectors:
        side = np.array([int(np.dot(np.cross(a, o), normal)) for o in vectors], dtype=np.int64)
        along = np.array([int(np.dot(a, o)) for o in vectors], dtype=np.int64)
        on_line = side == 0
        for strict in (int(np.sum(side > 0)), int(np.sum(side < 0))):
            for ray in (int(np.sum(on_line & (along > 0))), int(np.sum(on_line & (along < 0)))):
                best = min(best, strict + ray)
    return best


def integer_halfspace_depth(offsets):
    """
    Exact depth from integer offsets p - x, d in {2, 3}.

    Every open cell of the direction arrangement touches a direction
    orthogonal to one offset (d=2) or to two independent offsets (d=3); the
    count on each side of it is enumerated in integer arithmetic.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    coincident = int(np.sum(np.all(offsets == 0, axis=1)))
    others = offsets[np.any(offsets != 0, axis=1)]
    if others.shape[1] == 2:
        planar = np.column_stack([others, np.zeros(len(others), dtype=np.int64)])
        return coincident + _open_cell_minimum(planar, np.array([0, 0, 1]))
    best = None
    for p, q in itertools.combinations(others, 2):
        normal = np.cross(p, q)
        if not normal.any():
            continue
        for oriented in (normal, -normal):
            level = others @ oriented
            count = int(np.sum(level > 0)) + _open_cell_minimum(others[level == 0], oriented)
            best = count if best is None else min(best, count)
    if best is None:
        # Every offset on one line through x
        along = others @ others[0]
        best = min(int(np.sum(along > 0)), int(np.sum(along < 0)))
    return coincident + best


def grid_offsets(x, points, scale):
    scaled = (np.asarray(points) - np.asarray(x)) * scale
    rounded = np.rint(scaled)
    assert np.allclose(scaled, rounded, atol=1e-9)
    return rounded.astype(np.int64)


# Twelve points on the 2^-4 grid; (17/24, 5/8) is a vertex of D(2) lying on a
# line through two data points on opposite sides of it
COLLINEAR_VERTEX_POINTS = np.array(
    [
        [0.5, 0.9375],
        [0.125, 0.9375],
        [0.3125, 0.4375],
        [0.8125, 0.4375],
        [0.5625, 0.0],
        [0.75, 0.5625],
        [0.3125, 0.8125],
        [0.3125, 0.4375],
        [0.125, 0.375],
        [0.1875, 0.25],
        [0.75, 0.25],
        [0.5, 1.0],
    ]
)


class TestPointSet:
    def test_accepts_square(self, square_points):
        assert square_points.n == 4
        assert square_points.dim == 2

    def test_rejects_out_of_range(self):
        with pytest.raises(OffGridPoint) as exc_info:
            PointSet.from_coordinates([[0, 0], [1.5, 0], [0, 1]], grid_exponent=8)
        assert exc_info.value.rows == [1]

    def test_rejects_off_grid(self):
        with pytest.raises(OffGridPoint):
            PointSet.from_coordinates([[0, 0], [0.1, 0], [0, 1]], grid_exponent=4)

    def test_requires_d_plus_one_points(self):
        with pytest.raises(ValidationError):
            PointSet.from_coordinates([[0, 0], [1, 1]], grid_exponent=4)


class TestTukeyDepth:
    def test_square_center(self, square_points):
        assert tukey_depth(np.array([0.5, 0.5]), square_points) == 2

    def test_hull_vertex_has_depth_one(self, square_points):
        for corner in SQUARE_CORNERS:
            assert tukey_depth(np.array(corner), square_points) == 1

    def test_outside_point(self, square_points):
        assert tukey_depth(np.array([2.0, 2.0]), square_points) == 0

    def test_line(self):
        points = np.array([[0.0], [0.25], [0.5], [0.75], [1.0]])
        assert tukey_depth(np.array([0.5]), points) == 3
        assert tukey_depth(np.array([0.3]), points) == 2

    def test_cube_center(self):
        corners = np.array(list(itertools.product((0.0, 1.0), repeat=3)))
        assert tukey_depth(np.array([0.5, 0.5, 0.5]), corners) == 4
        assert tukey_depth(np.array([1.0, 1.0, 1.0]), corners) == 1
        assert tukey_depth(np.array([1.5, 0.5, 0.5]), corners) == 0

    def test_matches_brute_force(self, rng):
        for seed in range(15):
            points = uniform_points(12, 2, seed=seed).points
            x = rng.random(2)
            assert tukey_depth(x, points) == brute_force_depth_2d(x, points)

    def test_space_matches_direction_sweep(self, rng):
        points = uniform_points(15, 3, seed=3).points
        directions = rng.normal(size=(20000, 3))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        for x in np.round(rng.random((5, 3)) * 8 + 4) / 16:
            swept = int(np.min(np.sum((points - x) @ directions.T <= 0, axis=0)))
            exact = tukey_depth(x, points)
            # A finite sweep can only overestimate the minimum
            assert exact <= swept
            assert exact == integer_halfspace_depth(grid_offsets(x, points, 1024))

    @pytest.mark.parametrize("dim, n", [(2, 12), (3, 10)])
    def test_matches_integer_count_on_coarse_grid(self, rng, dim, n):
        # A 2^-3 grid makes collinear and coplanar offsets common
        for seed in range(4):
            points = uniform_points(n, dim, seed=40 + seed, grid_exponent=3).points
            queries = np.vstack([points, np.round(rng.random((6, dim)) * 8) / 8])
            for x in queries:
                assert tukey_depth(x, points) == integer_halfspace_depth(grid_offsets(x, points, 8))

    def test_vertex_on_line_through_two_points(self):
        vertex = np.array([17 / 24, 5 / 8])
        chain = region_chain(PointSet.from_coordinates(COLLINEAR_VERTEX_POINTS, grid_exponent=4))
        assert chain.region(2).contains(vertex[None, :], 1e-9).all()
        expected = integer_halfspace_depth(grid_offsets(vertex, COLLINEAR_VERTEX_POINTS, 48))
        assert expected >= 2
        assert tukey_depth(vertex, COLLINEAR_VERTEX_POINTS) == expected

    @pytest.mark.parametrize("dim, n", [(2, 12), (3, 10)])
    def test_region_vertices_reach_their_depth(self, dim, n):
        for seed in range(5):
            points = uniform_points(n, dim, seed=seed, grid_exponent=4)
            chain = region_chain(points)
            for kappa in range(1, chain.kappa_max + 1):
                for vertex in chain.region(kappa).vertices:
                    assert tukey_depth(vertex, points) >= kappa, (seed, kappa, vertex)

    def test_sensitivity_to_one_added_point(self, rng):
        for seed in range(50):
            points = uniform_points(20, 2, seed=100 + seed)
            x = rng.random(2)
            y = np.round(rng.random(2) * 1024) / 1024
            before = tukey_depth(x, points)
            after = tukey_depth(x, points.with_point(y))
            assert 0 <= after - before <= 1
