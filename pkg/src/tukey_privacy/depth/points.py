"""The sensitive input: grid-aligned points in the unit cube."""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from tukey_privacy.core.exceptions import OffGridPoint, ValidationError

# Distance to the 2^-u lattice still accepted as "on grid"
GRID_TOLERANCE = 1e-12


def snap_to_grid(values: np.ndarray, grid_exponent: int) -> np.ndarray:
    scale = float(2**grid_exponent)
    return np.round(np.asarray(values, dtype=float) * scale) / scale


@dataclass(frozen=True, eq=False)
class PointSet:
    """
    n points in [0,1]^d whose coordinates are multiples of 2^-grid_exponent.

    Usage:
        points = PointSet.from_coordinates([[0, 0], [1, 0], [0, 1]], grid_exponent=8)
    """

    points: np.ndarray
    grid_exponent: int

    @classmethod
    def from_coordinates(
        cls,
        coordinates: Iterable[Sequence[float]] | np.ndarray,
        grid_exponent: int,
        require_size: bool = True,
    ) -> "PointSet":
        """
        Validate and snap raw coordinates.

        Raises:
            ValidationError: On a malformed array or fewer than d+1 points.
            OffGridPoint: On coordinates outside [0,1] or off the grid.
        """
        points = np.asarray(coordinates, dtype=float)
        if points.ndim != 2 or points.shape[1] < 1:
            raise ValidationError("Points must form a non-empty (n, d) array", field="points")
        if not 0 <= grid_exponent <= 52:
            raise ValidationError(
                f"grid_exponent must lie in [0, 52], got {grid_exponent}", field="grid_exponent"
            )
        bad_finite = ~np.all(np.isfinite(points), axis=1)
        out_of_range = np.any((points < 0.0) | (points > 1.0), axis=1)
        snapped = snap_to_grid(np.where(np.isfinite(points), points, 0.0), grid_exponent)
        off_grid = np.any(np.abs(points - snapped) > GRID_TOLERANCE, axis=1)
        bad_rows = np.flatnonzero(bad_finite | out_of_range | off_grid).tolist()
        if bad_rows:
            raise OffGridPoint(
                f"{len(bad_rows)} point(s) outside [0,1]^d or off the 2^-{grid_exponent} grid "
                f"(rows {bad_rows[:10]})",
                rows=bad_rows,
            )
        n, dim = points.shape
        if require_size and n < dim + 1:
            raise ValidationError(f"Need at least d+1 = {dim + 1} points, got {n}", field="points")
        snapped.setflags(write=False)
        return cls(points=snapped, grid_exponent=grid_exponent)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def n(self) -> int:
        return self.points.shape[0]

    def __len__(self) -> int:
        return self.n

    @property
    def cache_key(self) -> tuple[bytes, tuple[int, ...], int]:
        """Hashable identity of the dataset, used to memoize its region chain."""
        return self.points.tobytes(), self.points.shape, self.grid_exponent

    def with_point(self, point: Sequence[float] | np.ndarray) -> "PointSet":
        """Neighbouring dataset with one extra point."""
        extended = np.vstack([self.points, np.asarray(point, dtype=float)[None, :]])
        return PointSet.from_coordinates(extended, self.grid_exponent)

    def without_index(self, index: int) -> "PointSet":
        """Neighbouring dataset with one point removed."""
        return PointSet.from_coordinates(
            np.delete(self.points, index, axis=0), self.grid_exponent, require_size=False
        )

    def to_list(self) -> list[list[float]]:
        return self.points.tolist()
