"""
Convex polytopes carried in both vertex and halfspace representation.

Hulls of any affine rank are supported: the points are expressed in an
orthonormal frame of their affine hull, hulled there with qhull, and the
facets are lifted back together with equality pairs for the directions
orthogonal to the hull.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from itertools import product

import numpy as np
from django.conf import settings
from scipy.spatial import ConvexHull, QhullError

from .exceptions import DegenerateInput, GeometryError, Unbounded

logger = logging.getLogger(__name__)

# Half side of the box used to start halfspace intersections without bounds
DEFAULT_INTERSECTION_RADIUS = 1e4


def geometry_tolerance() -> float:
    """Feasibility tolerance for every geometric predicate."""
    return settings.TUKEY_GEOMETRY_TOLERANCE


@dataclass(frozen=True, eq=False)
class Halfspace:
    """The closed halfspace {x : <x, normal> <= offset} with a unit normal."""

    normal: np.ndarray
    offset: float

    @classmethod
    def from_raw(cls, normal: Sequence[float] | np.ndarray, offset: float) -> "Halfspace":
        """Build a halfspace from a non-normalized (normal, offset) pair."""
        normal = np.asarray(normal, dtype=float)
        length = float(np.linalg.norm(normal))
        if length <= 1e-15:
            raise GeometryError("Halfspace normal must be non-zero")
        return cls(normal / length, float(offset) / length)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """Signed slack <x, normal> - offset; non-positive inside."""
        return np.asarray(points, dtype=float) @ self.normal - self.offset

    def contains(self, point: np.ndarray, tol: float | None = None) -> bool:
        tol = geometry_tolerance() if tol is None else tol
        return bool(self.evaluate(point) <= tol)


@dataclass(frozen=True, eq=False)
class Polytope:
    """
    Bounded convex polytope.

    `vertices` are the extreme points (k x d). `facets` is an H-rep whose
    intersection equals the hull of the vertices; lower-dimensional
    polytopes include opposite halfspace pairs pinning the affine hull.
    `null_space` holds unit normals of the affine hull (rows).
    """

    vertices: np.ndarray
    facets: tuple[Halfspace, ...]
    dim: int
    affine_rank: int
    null_space: np.ndarray

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_rank == self.dim

    @property
    def A(self) -> np.ndarray:
        if not self.facets:
            return np.zeros((0, self.dim))
        return np.vstack([h.normal for h in self.facets])

    @property
    def b(self) -> np.ndarray:
        return np.array([h.offset for h in self.facets])

    @property
    def centroid(self) -> np.ndarray:
        """Mean of the vertices (an interior point for full-dimensional polytopes)."""
        return self.vertices.mean(axis=0)

    def contains(self, points: np.ndarray, tol: float | None = None) -> np.ndarray:
        """Membership mask for a (k x d) array of points."""
        tol = geometry_tolerance() if tol is None else tol
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if not self.facets:
            return np.ones(len(points), dtype=bool)
        slack = points @ self.A.T - self.b
        return np.all(slack <= tol, axis=1)

    def contains_polytope(self, other: "Polytope", tol: float | None = None) -> bool:
        return bool(self.contains(other.vertices, tol).all())

    def extent(self, direction: np.ndarray) -> tuple[float, float]:
        """(min, max) of <x, direction> over the polytope."""
        values = self.vertices @ np.asarray(direction, dtype=float)
        return float(values.min()), float(values.max())

    def rotate(self, rotation: np.ndarray) -> "Polytope":
        """Apply an orthogonal map without re-hulling."""
        rotation = np.asarray(rotation, dtype=float)
        facets = tuple(Halfspace(rotation @ h.normal, h.offset) for h in self.facets)
        null_space = self.null_space @ rotation.T if self.null_space.size else self.null_space
        return Polytope(
            vertices=self.vertices @ rotation.T,
            facets=facets,
            dim=self.dim,
            affine_rank=self.affine_rank,
            null_space=null_space,
        )

    def affine(self, matrix: np.ndarray, shift: np.ndarray | None = None) -> "Polytope":
        """Image under x -> matrix @ x + shift (re-hulled)."""
        matrix = np.asarray(matrix, dtype=float)
        image = self.vertices @ matrix.T
        if shift is not None:
            image = image + np.asarray(shift, dtype=float)
        return hull_of_points(image)

    def project(self, basis: np.ndarray) -> "Polytope":
        """Coordinates in the orthonormal columns of `basis` (d x k), re-hulled."""
        return hull_of_points(self.vertices @ np.asarray(basis, dtype=float))

    def scaled(self, factor: float, center: np.ndarray) -> "Polytope":
        """Homothety about `center`."""
        center = np.asarray(center, dtype=float)
        return hull_of_points(center + factor * (self.vertices - center))


def _affine_frame(points: np.ndarray, tol: float) -> tuple[np.ndarray, np.ndarray, int]:
    """Return (origin, orthonormal rows of R^d ordered by spread, affine rank)."""
    origin = points.mean(axis=0)
    centered = points - origin
    _, singular, vt = np.linalg.svd(centered, full_matrices=True)
    if singular.size == 0:
        return origin, vt, 0
    threshold = tol * max(1.0, float(singular[0]))
    rank = int(np.sum(singular > threshold))
    return origin, vt, rank


def _merge_equations(equations: np.ndarray, tol: float) -> np.ndarray:
    """Collapse coplanar qhull facets (identical normal and offset)."""
    merged: list[np.ndarray] = []
    for row in equations:
        if not any(np.abs(row - kept).max() <= tol for kept in merged):
            merged.append(row)
    return np.array(merged)


def hull_of_points(points: Iterable[Sequence[float]] | np.ndarray) -> Polytope:
    """
    Convex hull of a point set of any affine rank.

    Raises:
        GeometryError: If the point set is empty.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if points.size == 0:
        raise GeometryError("Cannot hull an empty point set")
    if not np.all(np.isfinite(points)):
        raise GeometryError("Points must have finite coordinates")

    dim = points.shape[1]
    tol = geometry_tolerance()
    origin, frame, rank = _affine_frame(points, tol)

    hull = None
    while rank >= 2:
        try:
            hull = ConvexHull((points - origin) @ frame[:rank].T)
            break
        except QhullError:
            # Sliver thinner than qhull can resolve: drop the weakest direction
            logger.debug(f"Qhull rejected a rank-{rank} sliver, retrying at rank {rank - 1}")
            rank -= 1
    span, normals = frame[:rank], frame[rank:]

    facets: list[Halfspace] = []
    if rank == 0:
        vertices = points[:1].copy()
    elif rank == 1:
        coords = (points - origin) @ span[0]
        low, high = int(np.argmin(coords)), int(np.argmax(coords))
        vertices = points[[low, high]] if low != high else points[[low]]
        facets.append(Halfspace(span[0], float(points[high] @ span[0])))
        facets.append(Halfspace(-span[0], float(-(points[low] @ span[0]))))
    else:
        vertices = points[hull.vertices]
        equations = hull.equations
        if rank >= 3:
            equations = _merge_equations(equations, settings.TUKEY_COPLANAR_TOLERANCE)
        for eq in equations:
            lifted = eq[:-1] @ span
            facets.append(Halfspace.from_raw(lifted, -eq[-1] + lifted @ origin))

    for normal in normals:
        level = float(normal @ origin)
        facets.append(Halfspace(normal.copy(), level))
        facets.append(Halfspace(-normal, -level))

    return Polytope(
        vertices=vertices,
        facets=tuple(facets),
        dim=dim,
        affine_rank=rank,
        null_space=normals.copy(),
    )


def convex_hull(points: Iterable[Sequence[float]] | np.ndarray) -> Polytope:
    """
    Full-dimensional convex hull.

    Args:
        points: At least d+1 affinely independent points in R^d.

    Returns:
        Polytope with both representations.

    Raises:
        DegenerateInput: If the affine rank is below d.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    polytope = hull_of_points(points)
    if not polytope.is_full_dimensional:
        raise DegenerateInput(
            f"Points have affine rank {polytope.affine_rank} < {polytope.dim}",
            rank=polytope.affine_rank,
            dim=polytope.dim,
        )
    return polytope


def box_polytope(low: Sequence[float] | np.ndarray, high: Sequence[float] | np.ndarray) -> Polytope:
    """Axis-aligned box [low, high] as a polytope."""
    low = np.asarray(low, dtype=float)
    high = np.asarray(high, dtype=float)
    corners = np.array(list(product(*zip(low, high))))
    return hull_of_points(corners)


def clip(polytope: Polytope, halfspace: Halfspace, tol: float | None = None) -> Polytope | None:
    """
    Intersect a polytope with one halfspace.

    Returns None when the intersection is empty.
    """
    tol = geometry_tolerance() if tol is None else tol
    values = halfspace.evaluate(polytope.vertices)
    inside = values <= tol
    if inside.all():
        return polytope
    if not inside.any():
        return None

    kept = polytope.vertices[inside]
    v_in, s_in = kept, values[inside]
    v_out, s_out = polytope.vertices[~inside], values[~inside]
    # Crossing of every inside/outside pair; non-edge pairs fall inside the result
    t = s_in[:, None] / (s_in[:, None] - s_out[None, :])
    crossings = v_in[:, None, :] + t[..., None] * (v_out[None, :, :] - v_in[:, None, :])
    candidates = np.vstack([kept, crossings.reshape(-1, polytope.dim)])
    return hull_of_points(candidates)


def clip_many(
    polytope: Polytope | None, halfspaces: Iterable[Halfspace], tol: float | None = None
) -> Polytope | None:
    """Clip by several halfspaces in order, stopping at the first empty result."""
    for halfspace in halfspaces:
        if polytope is None:
            return None
        polytope = clip(polytope, halfspace, tol)
    return polytope


def halfspace_intersection(
    constraints: Sequence[Halfspace],
    dim: int,
    bounds: tuple[Sequence[float], Sequence[float]] | None = None,
) -> Polytope | None:
    """
    Vertex enumeration of an intersection of halfspaces.

    Args:
        constraints: Halfspaces to intersect.
        dim: Ambient dimension.
        bounds: Optional (low, high) bounding box the result is clipped to.

    Returns:
        The intersection, or None when it is empty.

    Raises:
        Unbounded: If no bounds are given and the intersection is unbounded.
    """
    if bounds is None:
        radius = DEFAULT_INTERSECTION_RADIUS
        start = box_polytope(np.full(dim, -radius), np.full(dim, radius))
    else:
        start = box_polytope(*bounds)

    result = clip_many(start, constraints)
    if result is None:
        return None
    if bounds is None:
        reach = np.abs(result.vertices).max()
        if reach >= DEFAULT_INTERSECTION_RADIUS * (1.0 - 1e-9):
            raise Unbounded("Halfspace intersection is unbounded")
    return result
