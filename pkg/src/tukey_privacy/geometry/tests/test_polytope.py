import numpy as np
import pytest

from tukey_privacy.geometry.exceptions import DegenerateInput, Unbounded
from tukey_privacy.geometry.polytope import (
    Halfspace,
    box_polytope,
    clip,
    convex_hull,
    halfspace_intersection,
    hull_of_points,
)

SQUARE = [[0, 0], [1, 0], [1, 1], [0, 1]]


def vertex_set(polytope):
    return {tuple(np.round(v, 9)) for v in polytope.vertices}


class TestConvexHull:
    def test_square(self):
        square = convex_hull(SQUARE)
        assert len(square.vertices) == 4
        assert len(square.facets) == 4
        assert square.is_full_dimensional

    def test_interior_point_dropped(self):
        square = convex_hull(SQUARE + [[0.5, 0.5]])
        assert vertex_set(square) == {(0, 0), (1, 0), (1, 1), (0, 1)}

    def test_collinear_points_rejected(self):
        with pytest.raises(DegenerateInput) as exc_info:
            convex_hull([[0, 0], [0.5, 0.5], [1, 1]])
        assert exc_info.value.rank == 1

    def test_cube_merges_coplanar_facets(self):
        corners = [[x, y, z] for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        cube = convex_hull(corners)
        assert len(cube.vertices) == 8
        assert len(cube.facets) == 6

    @pytest.mark.parametrize("dim", [2, 3])
    def test_idempotence(self, rng, dim):
        for _ in range(20):
            hull = convex_hull(rng.random((25, dim)))
            again = convex_hull(hull.vertices)
            assert vertex_set(again) == vertex_set(hull)

    @pytest.mark.parametrize("dim", [2, 3])
    def test_inputs_inside_and_vertices_satisfy_facets(self, rng, dim):
        points = rng.random((30, dim))
        hull = convex_hull(points)
        assert hull.contains(points).all()
        assert hull.contains(hull.vertices).all()


class TestLowerRank:
    def test_segment_in_plane(self):
        segment = hull_of_points([[0, 0], [0.5, 0.5], [1, 1]])
        assert segment.affine_rank == 1
        assert len(segment.vertices) == 2
        assert segment.contains([[0.25, 0.25]]).all()
        assert not segment.contains([[0.25, 0.3]]).any()

    def test_single_point(self):
        point = hull_of_points([[0.5, 0.5, 0.5]])
        assert point.affine_rank == 0
        assert point.contains([[0.5, 0.5, 0.5]]).all()
        assert not point.contains([[0.5, 0.5, 0.6]]).any()

    def test_planar_polygon_in_space(self):
        polygon = hull_of_points([[0, 0, 0.5], [1, 0, 0.5], [1, 1, 0.5], [0, 1, 0.5]])
        assert polygon.affine_rank == 2
        assert len(polygon.vertices) == 4


class TestHalfspaceIntersection:
    def test_unit_square(self):
        constraints = [
            Halfspace.from_raw([1, 0], 1),
            Halfspace.from_raw([-1, 0], 0),
            Halfspace.from_raw([0, 1], 1),
            Halfspace.from_raw([0, -1], 0),
        ]
        square = halfspace_intersection(constraints, 2)
        assert vertex_set(square) == {(0, 0), (1, 0), (1, 1), (0, 1)}

    def test_infeasible_is_empty(self):
        constraints = [Halfspace.from_raw([1, 0], 0), Halfspace.from_raw([-1, 0], -1)]
        assert halfspace_intersection(constraints, 2, bounds=([-5, -5], [5, 5])) is None

    def test_triangle(self):
        constraints = [
            Halfspace.from_raw([0, -1], 0),
            Halfspace.from_raw([1, 1], 2),
            Halfspace.from_raw([-1, 1], 0),
        ]
        triangle = halfspace_intersection(constraints, 2)
        assert vertex_set(triangle) == {(0, 0), (2, 0), (1, 1)}

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            halfspace_intersection([Halfspace.from_raw([1, 0], 1)], 2)


def test_clip_square_in_half():
    square = box_polytope([0, 0], [1, 1])
    half = clip(square, Halfspace.from_raw([1, 0], 0.5))
    assert vertex_set(half) == {(0, 0), (0.5, 0), (0.5, 1), (0, 1)}


def test_rotation_keeps_membership(rng):
    hull = convex_hull(rng.random((15, 3)))
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    rotated = hull.rotate(q)
    assert rotated.contains(hull.vertices @ q.T).all()


def test_halfspace_normalizes():
    h = Halfspace.from_raw([3, 4], 10)
    assert np.isclose(np.linalg.norm(h.normal), 1.0)
    assert np.isclose(h.offset, 2.0)
