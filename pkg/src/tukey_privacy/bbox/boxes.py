from dataclasses import dataclass
from itertools import product

import numpy as np

from tukey_privacy.geometry.polytope import Polytope, geometry_tolerance, hull_of_points

from .exceptions import DegenerateBox

# Orthonormality tolerance for box axes
AXIS_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class OrientedBox:
    """
    The box {x : low_j <= <x, axes[j]> <= high_j for every j}.

    Usage:
        box = OrientedBox(np.eye(2), np.array([[0.0, 2.0], [0.0, 1.0]]))
        box.volume  # 2.0
    """

    axes: np.ndarray  # (d, d), orthonormal rows
    intervals: np.ndarray  # (d, 2), [low, high] along each axis
    degenerate: bool = False  # some interval collapsed to a point

    def __post_init__(self):
        axes = np.atleast_2d(np.asarray(self.axes, dtype=float))
        intervals = np.atleast_2d(np.asarray(self.intervals, dtype=float))
        object.__setattr__(self, "axes", axes)
        object.__setattr__(self, "intervals", intervals)
        if axes.shape[0] != axes.shape[1] or intervals.shape != (axes.shape[0], 2):
            raise DegenerateBox(f"Box needs d axes and d intervals, got {axes.shape} and {intervals.shape}")
        if not np.allclose(axes @ axes.T, np.eye(len(axes)), atol=AXIS_TOLERANCE):
            raise DegenerateBox("Box axes are not orthonormal")
        inverted = np.flatnonzero(intervals[:, 1] < intervals[:, 0])
        if inverted.size:
            raise DegenerateBox(f"Interval {int(inverted[0])} is inverted", axis=int(inverted[0]))
        if not self.degenerate and np.any(self.lengths <= geometry_tolerance()):
            raise DegenerateBox(
                "Zero-length interval in a box not flagged degenerate",
                axis=int(np.argmin(self.lengths)),
            )

    @property
    def dim(self) -> int:
        return len(self.axes)

    @property
    def lengths(self) -> np.ndarray:
        return self.intervals[:, 1] - self.intervals[:, 0]

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    @property
    def center(self) -> np.ndarray:
        return self.intervals.mean(axis=1) @ self.axes

    def local(self, points: np.ndarray) -> np.ndarray:
        """Coordinates along the box axes."""
        return np.atleast_2d(np.asarray(points, dtype=float)) @ self.axes.T

    def corners(self) -> np.ndarray:
        """The 2^d corners in the original coordinates."""
        picks = np.array(list(product((0, 1), repeat=self.dim)))
        local = self.intervals[np.arange(self.dim), picks]
        return local @ self.axes

    def contains(self, points: np.ndarray, tol: float | None = None) -> np.ndarray:
        tol = geometry_tolerance() if tol is None else tol
        local = self.local(points)
        return np.all((local >= self.intervals[:, 0] - tol) & (local <= self.intervals[:, 1] + tol), axis=1)

    def to_polytope(self) -> Polytope:
        return hull_of_points(self.corners())

    def to_dict(self) -> dict:
        return {
            "axes": self.axes.tolist(),
            "intervals": self.intervals.tolist(),
            "volume": self.volume,
            "degenerate": self.degenerate,
        }
