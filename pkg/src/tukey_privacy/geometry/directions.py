"""Unit directions: angle covers of the sphere and axis-aligning rotations."""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np
from django.conf import settings
from scipy.linalg import null_space

from tukey_privacy.core.exceptions import ValidationError

from .exceptions import CoverTooLarge
from .polytope import geometry_tolerance


@dataclass(frozen=True, eq=False)
class AngleCover:
    """A zeta-angle cover: every unit vector is within angle zeta of some direction."""

    zeta: float
    dim: int
    directions: np.ndarray  # (size, dim), unit rows

    def __len__(self) -> int:
        return len(self.directions)

    def __iter__(self):
        return iter(self.directions)


def cover_size(zeta: float, dim: int) -> int:
    """2 * ceil(pi / zeta) ** (dim - 1)."""
    return 2 * math.ceil(math.pi / zeta) ** (dim - 1)


@lru_cache(maxsize=64)
def _cover_directions(zeta: float, dim: int) -> np.ndarray:
    m = math.ceil(math.pi / zeta)
    if dim == 1:
        return np.array([[1.0], [-1.0]])

    polar = (np.arange(m) + 0.5) * math.pi / m
    azimuth = np.arange(2 * m) * math.pi / m
    directions = []
    # Hyperspherical coordinates: dim-2 polar angles, one azimuth
    for angles in product(*([polar] * (dim - 2)), azimuth):
        angles = np.asarray(angles)
        vector = np.ones(dim)
        for i, angle in enumerate(angles[:-1]):
            vector[i] *= math.cos(angle)
            vector[i + 1 :] *= math.sin(angle)
        vector[-2] *= math.cos(angles[-1])
        vector[-1] *= math.sin(angles[-1])
        directions.append(vector)
    result = np.array(directions)
    result /= np.linalg.norm(result, axis=1, keepdims=True)
    result.setflags(write=False)
    return result


def angle_cover(zeta: float, dim: int) -> AngleCover:
    """
    Build a zeta-angle cover of the unit sphere in R^dim.

    Args:
        zeta: Covering angle in radians, 0 < zeta <= pi.
        dim: Ambient dimension (>= 1).

    Returns:
        AngleCover with 2 * ceil(pi/zeta)^(dim-1) directions.

    Raises:
        ValidationError: If zeta or dim is out of range.
        CoverTooLarge: If the cover exceeds TUKEY_COVER_CAP.
    """
    if not (0 < zeta <= math.pi):
        raise ValidationError(f"zeta must lie in (0, pi], got {zeta}", field="zeta")
    if dim < 1:
        raise ValidationError(f"dim must be >= 1, got {dim}", field="dim")
    size = cover_size(zeta, dim)
    cap = settings.TUKEY_COVER_CAP
    if size > cap:
        raise CoverTooLarge(
            f"Angle cover of size {size} exceeds the cap of {cap}; raise alpha",
            size=size,
            cap=cap,
        )
    return AngleCover(zeta=float(zeta), dim=dim, directions=_cover_directions(float(zeta), dim))


def rotate_to_axis(v: np.ndarray) -> np.ndarray:
    """
    Orthogonal R with R @ v = e1, so (R @ x)[0] == <x, v>.

    A Householder reflection, with the last row negated when needed to keep
    det(R) = +1 in dimensions >= 2.
    """
    v = np.asarray(v, dtype=float)
    v = v / np.linalg.norm(v)
    dim = v.size
    e1 = np.zeros(dim)
    e1[0] = 1.0
    u = v - e1
    norm_sq = float(u @ u)
    if norm_sq <= geometry_tolerance() ** 2:
        return np.eye(dim)
    rotation = np.eye(dim) - 2.0 * np.outer(u, u) / norm_sq
    if dim >= 2 and np.linalg.det(rotation) < 0:
        rotation[-1] *= -1.0
    return rotation


def orthogonal_complement(u: np.ndarray) -> np.ndarray:
    """Orthonormal basis (d x d-1, as columns) of the hyperplane orthogonal to u."""
    u = np.asarray(u, dtype=float)
    return null_space(u[None, :])
