"""
Tukey regions D(k) and the nested chain D(1) ⊇ D(2) ⊇ ... ⊇ D(k*).

D(k) is the intersection of all closed halfspaces whose open complement
holds at most k-1 points. Only hyperplanes through d data points need to be
considered; points on such a hyperplane count toward the closed side. The
chain is built incrementally: D(k) is D(k-1) clipped by the halfspaces that
become active at level k.
"""

import logging
import time
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations, product

import numpy as np
from scipy.spatial.distance import pdist

from tukey_privacy.geometry.measures import volume
from tukey_privacy.geometry.polytope import (
    Halfspace,
    Polytope,
    box_polytope,
    clip,
    geometry_tolerance,
    hull_of_points,
)

from .exceptions import EmptyRegion
from .points import PointSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RegionChain:
    """
    Nested non-empty regions in a linear frame of the original data space.

    Chain coordinates are y = frame @ x + offset for x in the original space.
    `regions[k - 1]` is D(k). Rotations, projections and affine transforms
    of a chain keep the frame so that the coordinate domain (the image of
    the unit cube) is known without looking at the data.

    Usage:
        chain = region_chain(points, kappa_max=10)
        chain.region(3)          # Polytope or None
        chain.rotated(R).region(3)
    """

    regions: tuple[Polytope, ...]
    grid_exponent: int
    frame: np.ndarray
    offset: np.ndarray
    clamp_to_unit: bool = False

    @property
    def dim(self) -> int:
        return self.frame.shape[0]

    @property
    def source_dim(self) -> int:
        return self.frame.shape[1]

    @property
    def kappa_max(self) -> int:
        return len(self.regions)

    @property
    def grid_step(self) -> float:
        return 2.0**-self.grid_exponent

    def region(self, kappa: int) -> Polytope | None:
        """D(kappa), or None when empty (kappa above the chain)."""
        if kappa < 1:
            raise ValueError(f"kappa must be >= 1, got {kappa}")
        if kappa > self.kappa_max:
            return None
        return self.regions[kappa - 1]

    def require(self, kappa: int) -> Polytope:
        """
        D(kappa), raising when the chain is too short.

        Raises:
            EmptyRegion: If kappa exceeds the deepest non-empty region.
        """
        region = self.region(max(kappa, 1))
        if region is None:
            raise EmptyRegion(
                f"D({kappa}) is empty; deepest region is D({self.kappa_max})",
                kappa=kappa,
                kappa_max=self.kappa_max,
            )
        return region

    def is_degenerate(self, kappa: int) -> bool:
        region = self.region(kappa)
        return region is not None and not region.is_full_dimensional

    def truncated(self, kappa_max: int) -> "RegionChain":
        return replace(self, regions=self.regions[: max(kappa_max, 0)])

    def coordinate_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-axis range of the image of the unit cube in chain coordinates."""
        low = self.offset + np.minimum(self.frame, 0.0).sum(axis=1)
        high = self.offset + np.maximum(self.frame, 0.0).sum(axis=1)
        if self.clamp_to_unit:
            low, high = np.maximum(low, 0.0), np.minimum(high, 1.0)
        return low, high

    def grid_range(self, axis: int) -> tuple[int, int]:
        """Inclusive integer range k with k * grid_step inside the axis domain."""
        low, high = self.coordinate_bounds()
        scale = 2.0**self.grid_exponent
        first = int(np.ceil(low[axis] * scale - 1e-9))
        last = int(np.floor(high[axis] * scale + 1e-9))
        return first, max(first, last)

    @property
    def diameter_bound(self) -> float:
        """Diameter of the coordinate domain (image of the unit cube)."""
        corners = np.array(list(product((0.0, 1.0), repeat=self.source_dim)))
        image = corners @ self.frame.T + self.offset
        bound = float(pdist(image).max()) if len(image) > 1 else 0.0
        if self.clamp_to_unit:
            bound = min(bound, float(np.sqrt(self.dim)))
        return bound

    def rotated(self, rotation: np.ndarray) -> "RegionChain":
        rotation = np.asarray(rotation, dtype=float)
        return replace(
            self,
            regions=tuple(r.rotate(rotation) for r in self.regions),
            frame=rotation @ self.frame,
            offset=rotation @ self.offset,
            clamp_to_unit=False,
        )

    def projected(self, basis: np.ndarray) -> "RegionChain":
        """Coordinates along the orthonormal columns of basis (dim x k), re-hulled."""
        basis = np.asarray(basis, dtype=float)
        return replace(
            self,
            regions=tuple(r.project(basis) for r in self.regions),
            frame=basis.T @ self.frame,
            offset=basis.T @ self.offset,
            clamp_to_unit=False,
        )

    def transformed(self, matrix: np.ndarray, shift: np.ndarray, clamp: bool = False) -> "RegionChain":
        """
        Image under y -> matrix @ y + shift.

        With clamp, every region is intersected with the unit cube and the
        chain stops at the first region that misses it.
        """
        matrix = np.asarray(matrix, dtype=float)
        shift = np.asarray(shift, dtype=float)
        regions = []
        cube = box_polytope(np.zeros(self.dim), np.ones(self.dim)) if clamp else None
        for region in self.regions:
            image = region.affine(matrix, shift)
            if clamp:
                for facet in cube.facets:
                    image = clip(image, facet) if image is not None else None
                if image is None:
                    break
            regions.append(image)
        return replace(
            self,
            regions=tuple(regions),
            frame=matrix @ self.frame,
            offset=matrix @ self.offset + shift,
            clamp_to_unit=clamp,
        )

    def volumes(self, kappa_max: int | None = None) -> np.ndarray:
        """vol(D(k)) for k = 1..kappa_max, 0 beyond the chain."""
        kappa_max = self.kappa_max if kappa_max is None else kappa_max
        values = np.zeros(kappa_max)
        for k, region in enumerate(self.regions[:kappa_max]):
            values[k] = volume(region)
        return values


def _hyperplanes(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit normals and offsets of hyperplanes through d affinely independent points."""
    n, dim = points.shape
    normals, offsets = [], []
    for chosen in combinations(range(n), dim):
        base = points[chosen[0]]
        spanning = points[list(chosen[1:])] - base
        if dim == 1:
            normal = np.array([1.0])
        elif dim == 2:
            normal = np.array([-spanning[0, 1], spanning[0, 0]])
        else:
            normal = np.cross(spanning[0], spanning[1])
        length = np.linalg.norm(normal)
        if length <= 1e-12:
            continue
        normal = normal / length
        normals.append(normal)
        offsets.append(float(normal @ base))
    if not normals:
        return np.zeros((0, dim)), np.zeros(0)
    return np.array(normals), np.array(offsets)


def _chain_full_rank(points: np.ndarray, kappa_max: int) -> list[Polytope]:
    tol = geometry_tolerance()
    normals, offsets = _hyperplanes(points)
    levels = points @ normals.T - offsets  # (n, M)
    strictly_above = np.sum(levels > tol, axis=0)
    strictly_below = np.sum(levels < -tol, axis=0)

    # Oriented constraints: (normal, offset, level at which it becomes active)
    oriented_normals = np.vstack([normals, -normals])
    oriented_offsets = np.concatenate([offsets, -offsets])
    activation = np.concatenate([strictly_above, strictly_below]) + 1

    regions: list[Polytope] = []
    current: Polytope | None = hull_of_points(points)
    for kappa in range(1, kappa_max + 1):
        active = np.flatnonzero(activation == kappa)
        if current is not None and kappa > 1 and active.size:
            slack = current.vertices @ oriented_normals[active].T - oriented_offsets[active]
            depth_of_cut = slack.max(axis=0)
            cutting = active[depth_of_cut > tol]
            # Deepest cuts first; later ones often become redundant
            cutting = cutting[np.argsort(-depth_of_cut[depth_of_cut > tol])]
            for index in cutting:
                current = clip(current, Halfspace(oriented_normals[index], oriented_offsets[index]))
                if current is None:
                    break
        if current is None:
            break
        regions.append(current)
    return regions


def _chain_line(coords: np.ndarray, kappa_max: int) -> list[tuple[float, float]]:
    ordered = np.sort(coords)
    n = ordered.size
    intervals = []
    for kappa in range(1, kappa_max + 1):
        if kappa - 1 > n - kappa:
            break
        intervals.append((float(ordered[kappa - 1]), float(ordered[n - kappa])))
    return intervals


def _compute_regions(points: np.ndarray, kappa_max: int) -> list[Polytope]:
    n, dim = points.shape
    reference = hull_of_points(points)
    rank = reference.affine_rank
    if rank == dim:
        return _chain_full_rank(points, kappa_max)

    # Lower-dimensional data: work in an orthonormal frame of the affine hull
    origin = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - origin, full_matrices=True)
    span = vt[:rank]
    if rank == 0:
        return [hull_of_points(points[:1])] * min(kappa_max, n)
    coords = (points - origin) @ span.T
    if rank == 1:
        local = [np.array([[lo], [hi]]) for lo, hi in _chain_line(coords[:, 0], kappa_max)]
        return [hull_of_points(origin + segment @ span) for segment in local]
    return [hull_of_points(origin + r.vertices @ span) for r in _chain_full_rank(coords, kappa_max)]


@lru_cache(maxsize=32)
def _cached_regions(
    key: bytes, shape: tuple[int, ...], grid_exponent: int, kappa_cap: int
) -> tuple[Polytope, ...]:
    points = np.frombuffer(key, dtype=float).reshape(shape)
    started = time.perf_counter()
    regions = tuple(_compute_regions(points, kappa_cap))
    logger.debug(
        f"Computed {len(regions)} Tukey regions for n={shape[0]}, d={shape[1]} "
        f"in {time.perf_counter() - started:.3f}s"
    )
    return regions


def region_chain(points: PointSet, kappa_max: int | None = None) -> RegionChain:
    """
    All non-empty Tukey regions D(1..min(kappa_max, k*)).

    Regions up to floor(n/2) (an upper bound on k*) are computed once per
    dataset and memoized; shorter chains are truncations.
    """
    cap = points.n // 2 + 1
    full = _cached_regions(*points.cache_key, cap)
    limit = len(full) if kappa_max is None else min(kappa_max, len(full))
    return RegionChain(
        regions=full[: max(limit, 0)],
        grid_exponent=points.grid_exponent,
        frame=np.eye(points.dim),
        offset=np.zeros(points.dim),
    )


def tukey_region(points: PointSet, kappa: int) -> Polytope | None:
    """
    D(kappa) for the points, or None when empty.

    A lower-dimensional result is reported through Polytope.affine_rank.
    """
    if kappa < 1:
        raise ValueError(f"kappa must be >= 1, got {kappa}")
    return region_chain(points).region(kappa)
