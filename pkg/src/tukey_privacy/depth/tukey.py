"""
Exact Tukey (halfspace) depth in dimensions 1 to 3.

The depth of x is the fewest points of P in any closed halfspace containing
x. The count is piecewise constant over directions, changing only where a
direction is orthogonal to some p - x, so it is enough to evaluate one
direction per cell of that arrangement. Critical directions closer than a
few geometry tolerances are merged, so a query lying on a line or plane
through data points counts them on the closed side.
"""

import math

import numpy as np

from tukey_privacy.geometry.exceptions import UnsupportedDimension
from tukey_privacy.geometry.polytope import geometry_tolerance

from .points import PointSet

# Points closer than this to the query count as coincident with it
COINCIDENT_TOLERANCE = 1e-12

# Critical angles closer than this many tolerances are merged into one
ARC_MERGE_FACTOR = 4.0


def _as_array(points: PointSet | np.ndarray) -> np.ndarray:
    return points.points if isinstance(points, PointSet) else np.asarray(points, dtype=float)


def _arc_midpoints(angles: np.ndarray, tolerance: float) -> np.ndarray:
    """
    Midpoints of the arcs between sorted angles on the circle.

    Angles closer than the tolerance are one critical angle, so every returned
    midpoint stays at least tolerance / 2 away from all of them.
    """
    ordered = np.sort(np.mod(angles, 2 * math.pi))
    gaps = np.diff(np.append(ordered, ordered[0] + 2 * math.pi))
    open_arcs = np.flatnonzero(gaps > tolerance)
    if open_arcs.size == 0:
        return np.array([ordered[0] + math.pi])
    return ordered[open_arcs] + 0.5 * gaps[open_arcs]


def _depth_line(offsets: np.ndarray) -> int:
    below = int(np.sum(offsets[:, 0] <= COINCIDENT_TOLERANCE))
    above = int(np.sum(offsets[:, 0] >= -COINCIDENT_TOLERANCE))
    return min(below, above)


def _depth_plane(offsets: np.ndarray) -> int:
    tolerance = geometry_tolerance()
    phi = np.arctan2(offsets[:, 1], offsets[:, 0])
    critical = np.concatenate([phi + math.pi / 2, phi - math.pi / 2])
    midpoints = _arc_midpoints(critical, ARC_MERGE_FACTOR * tolerance)
    directions = np.column_stack([np.cos(midpoints), np.sin(midpoints)])
    # Offsets within the tolerance of the boundary line count on the closed side
    scale = np.linalg.norm(offsets, axis=1)[:, None]
    counts = np.sum(offsets @ directions.T <= tolerance * scale, axis=0)
    return int(counts.min())


def _plane_basis(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.eye(3)[int(np.argmin(np.abs(normal)))]
    first = np.cross(normal, helper)
    first /= np.linalg.norm(first)
    return first, np.cross(normal, first)


def _depth_space(offsets: np.ndarray) -> int:
    # Every open cell of the great-circle arrangement borders some circle
    # {u : <w_p, u> = 0}; sample each arc on each circle, tilted to both sides.
    tolerance = geometry_tolerance()
    norms = np.linalg.norm(offsets, axis=1)
    units = offsets / norms[:, None]
    best = len(offsets)
    for w in units:
        e1, e2 = _plane_basis(w)
        a, b = offsets @ e1, offsets @ e2
        in_plane = np.hypot(a, b)
        # Offsets along +-w lie on the whole circle; only the tilt separates them
        parallel = in_plane <= tolerance * norms
        base = np.arctan2(b[~parallel], a[~parallel])
        if base.size == 0:
            midpoints = np.array([0.0])
        else:
            midpoints = _arc_midpoints(
                np.concatenate([base + math.pi / 2, base - math.pi / 2]), ARC_MERGE_FACTOR * tolerance
            )
        directions = np.outer(np.cos(midpoints), e1) + np.outer(np.sin(midpoints), e2)
        closed = offsets @ directions.T <= tolerance * in_plane[:, None]
        tilt = offsets @ w
        for sign in (1.0, -1.0):
            counted = np.where(parallel[:, None], (sign * tilt <= 0)[:, None], closed)
            best = min(best, int(counted.sum(axis=0).min()))
    return best


def tukey_depth(x: np.ndarray, points: PointSet | np.ndarray) -> int:
    """
    Exact Tukey depth of x with respect to the points.

    Args:
        x: Query point of dimension d.
        points: PointSet or (n, d) array, 1 <= d <= 3.

    Returns:
        min over closed halfspaces H containing x of |P ∩ H|.

    Raises:
        UnsupportedDimension: For d >= 4.
    """
    data = _as_array(points)
    x = np.asarray(x, dtype=float)
    if x.shape != (data.shape[1],):
        raise ValueError(f"Query of shape {x.shape} does not match dimension {data.shape[1]}")
    dim = data.shape[1]
    if dim > 3:
        raise UnsupportedDimension(f"Exact depth is only implemented for d <= 3, got {dim}", dim=dim)

    offsets = data - x
    coincident = np.all(np.abs(offsets) <= COINCIDENT_TOLERANCE, axis=1)
    others = offsets[~coincident]
    extra = int(coincident.sum())
    if others.size == 0:
        return extra
    if dim == 1:
        return _depth_line(offsets)
    if dim == 2:
        return extra + _depth_plane(others)
    return extra + _depth_space(others)


def tukey_depths(queries: np.ndarray, points: PointSet | np.ndarray) -> np.ndarray:
    """Depth of each query row."""
    data = _as_array(points)
    return np.array([tukey_depth(q, data) for q in np.atleast_2d(queries)], dtype=int)
