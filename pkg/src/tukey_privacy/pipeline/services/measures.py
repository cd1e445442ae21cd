"""Geometric measures of a released kernel (post-processing, no privacy cost)."""

import logging
from dataclasses import asdict, dataclass

import numpy as np

from tukey_privacy.geometry.measures import (
    boundary_measure,
    chebyshev_center,
    diameter_exact,
    min_enclosing_ball,
    volume,
    width_exact,
)
from tukey_privacy.geometry.polytope import Polytope, hull_of_points
from tukey_privacy.kernels.results import KernelResult

logger = logging.getLogger(__name__)


@dataclass
class AppliedMeasures:
    """Exact measures of CH(S)."""

    diameter: float
    width: float
    volume: float
    enclosing_radius: float  # min enclosing ball
    inscribed_radius: float  # largest inscribed ball
    boundary: float  # perimeter at d=2, surface area at d=3
    points: int

    def to_dict(self) -> dict:
        return asdict(self)


def measures_of_polytope(polytope: Polytope, points: int | None = None) -> AppliedMeasures:
    """The same measures for any polytope, e.g. an exact region used as an oracle."""
    return AppliedMeasures(
        diameter=diameter_exact(polytope)[0],
        width=width_exact(polytope)[0],
        volume=volume(polytope),
        enclosing_radius=min_enclosing_ball(polytope.vertices)[1],
        inscribed_radius=chebyshev_center(polytope)[1],
        boundary=boundary_measure(polytope),
        points=len(polytope.vertices) if points is None else points,
    )


def applied_measures(kernel: KernelResult | np.ndarray) -> AppliedMeasures:
    """
    Diameter, width, volume, ball radii and boundary of CH(S).

    An empty kernel measures 0 everywhere.
    """
    points = kernel.points if isinstance(kernel, KernelResult) else np.atleast_2d(np.asarray(kernel, dtype=float))
    if points.size == 0:
        logger.warning("Empty kernel; every applied measure is 0")
        return AppliedMeasures(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0)
    return measures_of_polytope(hull_of_points(points), points=len(points))
