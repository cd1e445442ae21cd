"""
Tukey-depth completion (TDC).

For a fixed prefix y of the first i coordinates, TDC_y(x) is the largest
depth of any point (y, x, *). Along the chain, the slices of D(1), D(2), ...
through the prefix project to nested intervals [a_k, b_k] on coordinate
i+1, and TDC_y(x) = max{k : a_k <= x <= b_k}. Every query is then a pair of
binary searches on the monotone endpoint lists.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from tukey_privacy.geometry.exceptions import Infeasible
from tukey_privacy.geometry.lp import lp_solve_matrix
from tukey_privacy.geometry.measures import directional_span
from tukey_privacy.geometry.polytope import geometry_tolerance

from .regions import RegionChain

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class NestedIntervals:
    """
    Intervals [lower[k-1], upper[k-1]] for k = 1..K, nested and non-empty.

    `lower` is non-decreasing and `upper` non-increasing.
    """

    prefix: tuple[float, ...]
    lower: np.ndarray
    upper: np.ndarray

    def __len__(self) -> int:
        return len(self.lower)

    def interval(self, kappa: int) -> tuple[float, float]:
        return float(self.lower[kappa - 1]), float(self.upper[kappa - 1])

    def shifted(self, ell: float) -> "NestedIntervals":
        """
        Intervals [a_k, b_k - ell], truncated at the first empty one.

        TDC of the result at x equals min(TDC(x), TDC(x + ell)).
        """
        upper = self.upper - ell
        empty = np.flatnonzero(self.lower > upper + geometry_tolerance())
        stop = int(empty[0]) if empty.size else len(self)
        return NestedIntervals(prefix=self.prefix, lower=self.lower[:stop], upper=upper[:stop])

    def change_points(self) -> np.ndarray:
        """Sorted endpoints where the completion value can change."""
        return np.sort(np.concatenate([self.lower, self.upper]))


@dataclass(frozen=True)
class TukeyQuery:
    """A completion query: prefix length i, point x or interval [p, q], shift ell."""

    prefix_length: int
    point: float | None = None
    interval: tuple[float, float] | None = None
    shift: float = 0.0


def tdc_precompute(chain: RegionChain, prefix: Sequence[float] = ()) -> NestedIntervals:
    """
    Nested intervals of coordinate len(prefix) over the slices D(k) ∩ {x_j = prefix_j}.

    Args:
        chain: Region chain, possibly rotated or projected.
        prefix: Fixed leading coordinates, at most dim - 1 of them.

    Returns:
        NestedIntervals, stopping at the first empty slice.
    """
    prefix = tuple(float(v) for v in prefix)
    axis = len(prefix)
    if axis >= chain.dim:
        raise ValueError(f"Prefix of length {axis} leaves no free coordinate in dimension {chain.dim}")

    tol = geometry_tolerance()
    lower, upper = [], []
    objective = np.zeros(chain.dim)
    objective[axis] = 1.0
    pinned = np.eye(chain.dim)[:axis]
    slab_A = np.vstack([pinned, -pinned]) if axis else np.zeros((0, chain.dim))
    slab_b = np.concatenate([np.array(prefix) + tol, -np.array(prefix) + tol]) if axis else np.zeros(0)

    for region in chain.regions:
        if axis == 0:
            lower.append(float(region.vertices[:, 0].min()))
            upper.append(float(region.vertices[:, 0].max()))
            continue
        A = np.vstack([region.A, slab_A])
        b = np.concatenate([region.b + tol, slab_b])
        try:
            low, _ = lp_solve_matrix(objective, A, b, sense="min")
            high, _ = lp_solve_matrix(objective, A, b, sense="max")
        except Infeasible:
            break
        lower.append(low)
        upper.append(high)

    lower_arr = np.maximum.accumulate(np.array(lower)) if lower else np.zeros(0)
    upper_arr = np.minimum.accumulate(np.array(upper)) if upper else np.zeros(0)
    return NestedIntervals(prefix=prefix, lower=lower_arr, upper=upper_arr)


def tdc_eval(intervals: NestedIntervals, query: float | tuple[float, float]) -> int:
    """
    Completion depth of a point x or an interval [p, q].

    For an interval this is max{k : [p, q] ∩ [a_k, b_k] ≠ ∅}; 0 when no
    interval is met.
    """
    if len(intervals) == 0:
        return 0
    tol = geometry_tolerance()
    if isinstance(query, tuple):
        p, q = query
    else:
        p = q = float(query)
    reach_left = int(np.searchsorted(intervals.lower, q + tol, side="right"))
    reach_right = int(np.searchsorted(-intervals.upper, -p + tol, side="right"))
    return min(reach_left, reach_right)


def ltdc_eval(intervals: NestedIntervals, ell: float, query: float | tuple[float, float]) -> int:
    """
    ell-TDC: min(TDC(x), TDC(x + ell)), maximized over x in an interval.
    """
    if isinstance(query, tuple):
        return tdc_eval(intervals.shifted(ell), query)
    return min(tdc_eval(intervals, float(query)), tdc_eval(intervals, float(query) + ell))


def grid_max(intervals: NestedIntervals, first: int, last: int, step: float) -> int:
    """
    max TDC over the grid points k * step, first <= k <= last.

    Interval k contributes when it contains at least one grid point of the
    range; nesting makes the contributing set a prefix.
    """
    if len(intervals) == 0 or last < first:
        return 0
    tol = geometry_tolerance()
    low = np.maximum(intervals.lower, first * step)
    high = np.minimum(intervals.upper, last * step)
    has_point = np.ceil(low / step - tol) <= np.floor(high / step + tol)
    misses = np.flatnonzero(~has_point)
    return int(misses[0]) if misses.size else len(intervals)


def projection_intervals(chain: RegionChain, direction: np.ndarray) -> NestedIntervals:
    """
    TDC of the chain rotated so that `direction` becomes the first axis,
    with an empty prefix: the extents of <x, v> over each region.
    """
    direction = np.asarray(direction, dtype=float)
    lower = np.array([float((region.vertices @ direction).min()) for region in chain.regions])
    upper = np.array([float((region.vertices @ direction).max()) for region in chain.regions])
    if not len(lower):
        return NestedIntervals(prefix=(), lower=np.zeros(0), upper=np.zeros(0))
    return NestedIntervals(
        prefix=(), lower=np.maximum.accumulate(lower), upper=np.minimum.accumulate(upper)
    )


def projection_spans(chain: RegionChain, directions: np.ndarray) -> np.ndarray:
    """
    (kappa_max, len(directions)) array of directional spans of D(1), D(2), ...

    Column v is non-increasing, so the whole-line ell-TDC along v is the
    number of entries >= ell.
    """
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    if chain.kappa_max == 0:
        return np.zeros((0, len(directions)))
    spans = np.array([directional_span(region.vertices, directions) for region in chain.regions])
    return np.minimum.accumulate(spans, axis=0)


def chain_depth(chain: RegionChain, point: Sequence[float]) -> int:
    """Largest k with the point in D(k) (0 outside D(1))."""
    point = [float(v) for v in point]
    return tdc_eval(tdc_precompute(chain, point[:-1]), point[-1])
