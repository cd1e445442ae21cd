"""
Non-private bounding box by recursive projection.

Pick a long segment st, bound the points along its direction, project
everything onto the hyperplane orthogonal to it and recurse. With
|st| >= diam/gamma the box has volume at most gamma^(d-1) d! vol(CH(P)).
"""

import logging

import numpy as np

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.geometry.directions import orthogonal_complement
from tukey_privacy.geometry.exceptions import DegenerateInput
from tukey_privacy.geometry.measures import diameter_exact
from tukey_privacy.geometry.polytope import Polytope, geometry_tolerance, hull_of_points

from .boxes import OrientedBox

logger = logging.getLogger(__name__)


def long_segment(points: np.ndarray, gamma: float) -> tuple[np.ndarray, np.ndarray]:
    """
    Two points at distance >= diam / gamma.

    The exact diameter pair for gamma < 2, otherwise the point farthest
    from the first one (always within a factor 2 of the diameter).
    """
    if gamma < 2.0:
        _, s, t = diameter_exact(hull_of_points(points))
        return s, t
    s = points[0]
    t = points[int(np.argmax(np.linalg.norm(points - s, axis=1)))]
    return s, t


def bbox_nonprivate(data: PointSet | Polytope | np.ndarray, gamma: float = 1.0) -> OrientedBox:
    """
    Bounding box of a full-dimensional point set or polytope.

    Args:
        data: Points (or the vertices of a polytope) in R^d.
        gamma: Segment quality, >= 1; 1 uses exact diameter pairs.

    Raises:
        ValidationError: If gamma < 1.
        DegenerateInput: If the points do not span R^d.
    """
    if gamma < 1:
        raise ValidationError(f"gamma must be >= 1, got {gamma}", field="gamma")
    if isinstance(data, PointSet):
        points = data.points
    elif isinstance(data, Polytope):
        points = data.vertices
    else:
        points = np.atleast_2d(np.asarray(data, dtype=float))
    dim = points.shape[1]
    rank = hull_of_points(points).affine_rank
    if rank < dim:
        raise DegenerateInput(f"Points span only {rank} of {dim} dimensions", rank=rank, dim=dim)

    tol = geometry_tolerance()
    frame = np.eye(dim)  # rows span the current subspace
    local = points
    axes, intervals = [], []
    while local.shape[1] > 1:
        s, t = long_segment(local, gamma)
        gap = np.linalg.norm(t - s)
        if gap <= tol:
            raise DegenerateInput("Projected points collapsed to a single point", rank=0, dim=local.shape[1])
        u = (t - s) / gap
        along = local @ u
        axes.append(u @ frame)
        intervals.append((float(along.min()), float(along.max())))
        basis = orthogonal_complement(u)
        local = local @ basis
        frame = basis.T @ frame
    along = local[:, 0]
    axes.append(frame[0])
    intervals.append((float(along.min()), float(along.max())))

    box = OrientedBox(np.array(axes), np.array(intervals))
    logger.debug(f"Non-private bounding box of {len(points)} points: volume {box.volume:.6g}")
    return box
