"""
Private points inside a Tukey region and pairs of deep points at a given
separation, built from coordinate-by-coordinate TDC maximization.
"""

import logging
from collections.abc import Sequence

import numpy as np

from tukey_privacy.depth.completion import (
    NestedIntervals,
    chain_depth,
    grid_max,
    tdc_precompute,
)
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.quasi_concave import QuasiConcaveOracle, dp_binary_search_qc, qc_alpha

from .params import DPParams, EstimateReport, as_chain

logger = logging.getLogger(__name__)


def chain_qc_alpha(chain: RegionChain, epsilon: float, beta: float) -> float:
    """alpha_qc of one binary search on the widest coordinate grid of the chain."""
    sizes = [last - first + 1 for first, last in map(chain.grid_range, range(chain.dim))]
    return qc_alpha(max(sizes), epsilon, beta)


def maximize_completion(
    chain: RegionChain,
    intervals: NestedIntervals,
    epsilon: float,
    beta: float,
    noise: NoiseSource,
    budget: PrivacyBudget,
) -> float:
    """
    Privately maximize a completion function over the grid of its free axis.

    `intervals` may be plain TDC intervals or shifted ones (ell-TDC).
    """
    axis = len(intervals.prefix)
    first, last = chain.grid_range(axis)
    step = chain.grid_step
    oracle = QuasiConcaveOracle(
        evaluate=lambda i, j: grid_max(intervals, first + i, first + j, step),
        size=last - first + 1,
        origin=first * step,
        step=step,
    )
    budget.charge("binary_search_qc", epsilon)
    return dp_binary_search_qc(oracle, epsilon, beta, noise)


def complete_point(
    chain: RegionChain,
    prefix: Sequence[float],
    epsilon: float,
    beta: float,
    noise: NoiseSource,
    budget: PrivacyBudget,
) -> tuple[np.ndarray, int]:
    """
    Extend a prefix to a full point, one private TDC maximization per free axis.

    Returns:
        The point and its (non-private) depth in the chain.
    """
    coordinates = [float(v) for v in prefix]
    for _ in range(len(coordinates), chain.dim):
        intervals = tdc_precompute(chain, coordinates)
        coordinates.append(maximize_completion(chain, intervals, epsilon, beta, noise, budget))
    return np.array(coordinates), chain_depth(chain, coordinates)


def dp_point_in_region(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    A grid point of depth close to kappa, (epsilon, 0)-DP.

    Runs d binary searches at epsilon/d each, fixing one coordinate at a
    time. The depth loss is d * alpha_qc(epsilon/d, beta/d).

    Raises:
        EmptyRegion: If D(kappa) is empty.
    """
    chain = as_chain(data)
    chain.require(kappa)
    source = params.source(noise)
    dim = chain.dim
    epsilon, beta = params.epsilon / dim, params.beta / dim
    delta_depth = dim * chain_qc_alpha(chain, epsilon, beta)
    if chain.kappa_max < kappa + params.offset(delta_depth):
        logger.warning(
            f"D({kappa}) is only guaranteed to be hit when D({kappa + delta_depth:.1f}) is non-empty; "
            f"the chain ends at {chain.kappa_max}"
        )

    budget = PrivacyBudget()
    point, depth = complete_point(chain, (), epsilon, beta, source, budget)
    logger.debug(f"Private point {point.tolist()} at depth {depth} (target {kappa})")
    return EstimateReport(value=point, delta_depth=delta_depth, budget=budget, details={"depth": depth})


def dp_pair_at_distance(
    data: PointSet | RegionChain,
    kappa: int,
    ell: float,
    params: DPParams,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    Two deep points x, y with y[0] - x[0] == ell, (epsilon, 0)-DP.

    The first coordinate maximizes the ell-TDC; each point is then completed
    separately. All 2d - 1 searches run at epsilon/(2d - 1).

    Returns:
        EstimateReport whose value is the pair; details carry the achieved
        depths and a `low_depth` flag (non-private, for diagnostics).
    """
    chain = as_chain(data)
    source = params.source(noise)
    calls = 2 * chain.dim - 1
    epsilon, beta = params.epsilon / calls, params.beta / calls
    budget = PrivacyBudget()

    shifted = tdc_precompute(chain).shifted(ell)
    start = maximize_completion(chain, shifted, epsilon, beta, source, budget)
    x, x_depth = complete_point(chain, (start,), epsilon, beta, source, budget)
    y, y_depth = complete_point(chain, (start + ell,), epsilon, beta, source, budget)
    low_depth = min(x_depth, y_depth) < kappa
    if low_depth:
        logger.info(f"Pair at distance {ell} reached depths ({x_depth}, {y_depth}) below {kappa}")
    return EstimateReport(
        value=(x, y),
        delta_depth=calls * chain_qc_alpha(chain, epsilon, beta),
        budget=budget,
        details={"depths": (x_depth, y_depth), "low_depth": low_depth},
    )
