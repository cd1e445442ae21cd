"""
Exact measures of polytopes: volume, boundary measure, diameter, width,
largest inscribed ball, smallest enclosing ball, and a vectorised
polytope/box overlap test.
"""

import itertools
import logging

import numpy as np
from scipy.spatial import ConvexHull
from scipy.spatial.distance import pdist, squareform

from .exceptions import UnsupportedDimension
from .lp import lp_solve_matrix
from .polytope import Polytope, geometry_tolerance, hull_of_points

logger = logging.getLogger(__name__)

# Cell batches for the overlap test, keeps the (cells x axes) products small
OVERLAP_CHUNK = 50_000


def _angular_order(points: np.ndarray) -> np.ndarray:
    center = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - center[1], points[:, 0] - center[0])
    return points[np.argsort(angles)]


def _polygon_area(points: np.ndarray) -> float:
    ring = _angular_order(points)
    x, y = ring[:, 0], ring[:, 1]
    return 0.5 * abs(float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def _polygon_perimeter(points: np.ndarray) -> float:
    ring = _angular_order(points)
    return float(np.linalg.norm(ring - np.roll(ring, -1, axis=0), axis=1).sum())


def _in_frame(polytope: Polytope) -> np.ndarray:
    """Vertices expressed in an orthonormal frame of their affine hull."""
    centered = polytope.vertices - polytope.vertices.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=True)
    return centered @ vt[: polytope.affine_rank].T


def volume(polytope: Polytope) -> float:
    """
    d-dimensional volume; 0 for lower-dimensional polytopes.

    Raises:
        UnsupportedDimension: For d >= 4.
    """
    dim = polytope.dim
    if dim >= 4:
        raise UnsupportedDimension(f"Volume is only implemented for d <= 3, got {dim}", dim=dim)
    if not polytope.is_full_dimensional:
        return 0.0
    vertices = polytope.vertices
    if dim == 1:
        return float(vertices.max() - vertices.min())
    if dim == 2:
        return _polygon_area(vertices)

    # Fan of tetrahedra from the centroid over the triangulated boundary
    hull = ConvexHull(vertices)
    center = vertices.mean(axis=0)
    a = vertices[hull.simplices[:, 0]] - center
    b = vertices[hull.simplices[:, 1]] - center
    c = vertices[hull.simplices[:, 2]] - center
    return float(np.abs(np.sum(a * np.cross(b, c), axis=1)).sum() / 6.0)


def boundary_measure(polytope: Polytope) -> float:
    """Perimeter at d=2, surface area at d=3; degenerate bodies count both sides."""
    dim, rank = polytope.dim, polytope.affine_rank
    if dim >= 4:
        raise UnsupportedDimension(f"Boundary measure is only implemented for d <= 3, got {dim}", dim=dim)
    if rank == 0 or dim == 1:
        return 0.0 if rank == 0 else 2.0
    if rank == 1:
        return 2.0 * float(np.linalg.norm(polytope.vertices[0] - polytope.vertices[-1])) if dim == 2 else 0.0
    if dim == 2:
        return _polygon_perimeter(polytope.vertices)
    if rank == 2:
        return 2.0 * _polygon_area(_in_frame(polytope))
    hull = ConvexHull(polytope.vertices)
    return float(hull.area)


def diameter_exact(polytope: Polytope) -> tuple[float, np.ndarray, np.ndarray]:
    """Largest vertex-pair distance and an achieving pair."""
    vertices = polytope.vertices
    if len(vertices) == 1:
        return 0.0, vertices[0].copy(), vertices[0].copy()
    distances = squareform(pdist(vertices))
    i, j = np.unravel_index(int(np.argmax(distances)), distances.shape)
    return float(distances[i, j]), vertices[i].copy(), vertices[j].copy()


def directional_span(vertices: np.ndarray, directions: np.ndarray) -> np.ndarray:
    """max - min of <x, u> over the vertices, for each row u of directions."""
    projections = vertices @ np.atleast_2d(directions).T
    return projections.max(axis=0) - projections.min(axis=0)


def _edge_directions(vertices: np.ndarray) -> np.ndarray:
    hull = ConvexHull(vertices)
    edges = set()
    for simplex in hull.simplices:
        for i, j in itertools.combinations(sorted(int(k) for k in simplex), 2):
            edges.add((i, j))
    pairs = np.array(sorted(edges))
    directions = hull.points[pairs[:, 1]] - hull.points[pairs[:, 0]]
    return directions / np.linalg.norm(directions, axis=1, keepdims=True)


def width_exact(polytope: Polytope) -> tuple[float, np.ndarray]:
    """
    Minimum directional span and a minimizing unit direction.

    Candidates are facet normals at d=2 and facet normals plus normalized
    cross products of edge-direction pairs at d=3. Lower-dimensional
    polytopes have width 0 along a normal of their affine hull.
    """
    dim = polytope.dim
    if not polytope.is_full_dimensional:
        return 0.0, polytope.null_space[0].copy()
    vertices = polytope.vertices
    if dim == 1:
        return float(vertices.max() - vertices.min()), np.array([1.0])
    if dim > 3:
        raise UnsupportedDimension(f"Exact width is only implemented for d <= 3, got {dim}", dim=dim)

    candidates = [polytope.A]
    if dim == 3:
        edges = _edge_directions(vertices)
        i, j = np.triu_indices(len(edges), k=1)
        crosses = np.cross(edges[i], edges[j])
        lengths = np.linalg.norm(crosses, axis=1)
        keep = lengths > 1e-12
        candidates.append(crosses[keep] / lengths[keep, None])
    directions = np.vstack(candidates)
    spans = directional_span(vertices, directions)
    best = int(np.argmin(spans))
    return float(spans[best]), directions[best].copy()


def chebyshev_center(polytope: Polytope) -> tuple[np.ndarray, float]:
    """
    Center and radius of the largest inscribed ball.

    Solved as an LP over (x, r): maximize r subject to <a_i, x> + r <= b_i
    (unit normals) and r >= 0. Lower-dimensional polytopes return their
    centroid with radius 0.
    """
    if not polytope.is_full_dimensional:
        return polytope.centroid, 0.0
    dim = polytope.dim
    A = polytope.A
    rows = np.hstack([A, np.ones((len(A), 1))])
    nonneg = np.zeros((1, dim + 1))
    nonneg[0, -1] = -1.0
    objective = np.zeros(dim + 1)
    objective[-1] = 1.0
    _, solution = lp_solve_matrix(
        objective, np.vstack([rows, nonneg]), np.concatenate([polytope.b, [0.0]]), sense="max"
    )
    return solution[:dim], float(solution[-1])


def _circumsphere(boundary: list[np.ndarray]) -> tuple[np.ndarray, float]:
    if not boundary:
        return np.zeros(0), -1.0
    base = boundary[0]
    if len(boundary) == 1:
        return base.copy(), 0.0
    offsets = np.array([p - base for p in boundary[1:]])
    gram = offsets @ offsets.T
    rhs = 0.5 * np.sum(offsets**2, axis=1)
    coefficients = np.linalg.lstsq(gram, rhs, rcond=None)[0]
    center = base + coefficients @ offsets
    return center, float(np.linalg.norm(center - base))


def _welzl(points: np.ndarray, boundary: list[np.ndarray], dim: int) -> tuple[np.ndarray, float]:
    center, radius = _circumsphere(boundary)
    if len(boundary) == dim + 1:
        return center, radius
    tol = geometry_tolerance()
    for i in range(len(points)):
        p = points[i]
        if radius >= 0 and np.linalg.norm(p - center) <= radius + tol:
            continue
        center, radius = _welzl(points[:i], boundary + [p], dim)
    return center, radius


def min_enclosing_ball(points: np.ndarray) -> tuple[np.ndarray, float]:
    """
    Smallest enclosing ball of a point set (Welzl's move-through scheme).

    Only hull vertices take part; their order is shuffled with a fixed seed
    so results are reproducible.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    vertices = hull_of_points(points).vertices
    order = np.random.default_rng(0).permutation(len(vertices))
    center, radius = _welzl(vertices[order], [], points.shape[1])
    return center, max(radius, 0.0)


def _separating_axes(polytope: Polytope) -> np.ndarray:
    dim = polytope.dim
    axes = [np.eye(dim)]
    if polytope.facets:
        axes.append(polytope.A)
    if dim == 3 and len(polytope.vertices) > 1:
        i, j = np.triu_indices(len(polytope.vertices), k=1)
        edges = polytope.vertices[j] - polytope.vertices[i]
        for axis in np.eye(3):
            crosses = np.cross(edges, axis)
            lengths = np.linalg.norm(crosses, axis=1)
            keep = lengths > 1e-12
            axes.append(crosses[keep] / lengths[keep, None])
    return np.vstack(axes)


def boxes_overlapping(polytope: Polytope, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    """
    Mask of axis-aligned boxes [lows[i], highs[i]] that meet the polytope.

    Exact separating-axis test: box face normals, polytope facet normals, and
    at d=3 cross products of vertex-pair directions with the coordinate axes.
    Extra axes only add valid separation certificates.
    """
    lows = np.atleast_2d(np.asarray(lows, dtype=float))
    highs = np.atleast_2d(np.asarray(highs, dtype=float))
    tol = geometry_tolerance()
    axes = _separating_axes(polytope)
    projected = polytope.vertices @ axes.T
    poly_low, poly_high = projected.min(axis=0), projected.max(axis=0)
    abs_axes = np.abs(axes)

    result = np.empty(len(lows), dtype=bool)
    for start in range(0, len(lows), OVERLAP_CHUNK):
        stop = start + OVERLAP_CHUNK
        centers = 0.5 * (lows[start:stop] + highs[start:stop])
        halves = 0.5 * (highs[start:stop] - lows[start:stop])
        mid = centers @ axes.T
        reach = halves @ abs_axes.T
        separated = (poly_high < mid - reach - tol) | (poly_low > mid + reach + tol)
        result[start:stop] = ~separated.any(axis=1)
    return result
