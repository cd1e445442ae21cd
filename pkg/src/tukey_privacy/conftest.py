"""Shared fixtures for every app's tests."""

import numpy as np
import pytest

from tukey_privacy.depth.points import PointSet
from tukey_privacy.geometry.exceptions import Infeasible
from tukey_privacy.geometry.lp import lp_solve_matrix
from tukey_privacy.geometry.polytope import Polytope
from tukey_privacy.privacy.noise import NoiseMode

SQUARE_CORNERS = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def square_points():
    return PointSet.from_coordinates(SQUARE_CORNERS, grid_exponent=8)


@pytest.fixture
def disabled():
    return NoiseMode.disabled()


def uniform_points(n: int, dim: int, seed: int, grid_exponent: int = 10) -> PointSet:
    """Grid-snapped uniform sample, used by several test modules."""
    generator = np.random.default_rng(seed)
    scale = 2**grid_exponent
    coords = np.round(generator.random((n, dim)) * scale) / scale
    return PointSet.from_coordinates(coords, grid_exponent=grid_exponent)


@pytest.fixture
def uniform_2d():
    return uniform_points(60, 2, seed=11)


def lp_feasible(polytope: Polytope, low: np.ndarray, high: np.ndarray) -> bool:
    """LP feasibility of polytope ∩ box; slow reference for boxes_overlapping."""
    dim = polytope.dim
    A = np.vstack([polytope.A, np.eye(dim), -np.eye(dim)])
    b = np.concatenate([polytope.b, np.asarray(high, float), -np.asarray(low, float)])
    try:
        lp_solve_matrix(np.zeros(dim), A, b)
    except Infeasible:
        return False
    return True
