"""
Affine maps that send a bounding box onto the unit cube.

When vol(D(kappa)) is at least half of vol(D(kappa')) for the depth
kappa' the box guarantee refers to, the image of D(kappa) is absolutely
fat. The clamped variant also intersects every image with the unit cube,
so shallower regions stay inside the domain the grid kernel partitions.
"""

import logging
from dataclasses import dataclass

import numpy as np

from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.geometry.polytope import Polytope, box_polytope, clip, geometry_tolerance

from .boxes import OrientedBox
from .exceptions import DegenerateBox

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FatteningTransform:
    """
    x -> matrix @ x + shift, carrying `box` onto [0,1]^d.

    Usage:
        transform = fattening_transform(box)
        transformed = transform.apply_chain(chain)
        original = transform.inverse(kernel_points)
    """

    matrix: np.ndarray
    shift: np.ndarray
    box: OrientedBox
    clamped: bool = True

    @property
    def inverse_matrix(self) -> np.ndarray:
        return np.linalg.inv(self.matrix)

    def forward(self, points: np.ndarray) -> np.ndarray:
        return np.atleast_2d(np.asarray(points, dtype=float)) @ self.matrix.T + self.shift

    def inverse(self, points: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(np.asarray(points, dtype=float)) - self.shift) @ self.inverse_matrix.T

    def apply_polytope(self, polytope: Polytope) -> Polytope | None:
        """Image of a polytope; None when the clamped image misses the cube."""
        image = polytope.affine(self.matrix, self.shift)
        if not self.clamped:
            return image
        cube = box_polytope(np.zeros(image.dim), np.ones(image.dim))
        for facet in cube.facets:
            image = clip(image, facet)
            if image is None:
                return None
        return image

    def apply_chain(self, chain: RegionChain) -> RegionChain:
        return chain.transformed(self.matrix, self.shift, clamp=self.clamped)

    def to_dict(self) -> dict:
        return {
            "matrix": self.matrix.tolist(),
            "shift": self.shift.tolist(),
            "clamped": self.clamped,
            "determinant": float(np.linalg.det(self.matrix)),
        }


def fattening_transform(box: OrientedBox, clamped: bool = True) -> FatteningTransform:
    """
    Rotate onto the box axes, then rescale each side to [0, 1].

    Raises:
        DegenerateBox: If some side is too short to rescale.
    """
    lengths = box.lengths
    short = np.flatnonzero(lengths <= geometry_tolerance())
    if short.size:
        raise DegenerateBox(
            f"Box side {int(short[0])} has length {lengths[short[0]]:.3g}; cannot rescale",
            axis=int(short[0]),
        )
    matrix = box.axes / lengths[:, None]
    shift = -box.intervals[:, 0] / lengths
    logger.debug(f"Fattening transform with side lengths {lengths.tolist()}")
    return FatteningTransform(matrix=matrix, shift=shift, box=box, clamped=clamped)
