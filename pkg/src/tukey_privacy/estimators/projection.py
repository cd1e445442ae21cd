"""
Directional estimators: how far a region reaches beyond a point along a
direction, and which direction of a list admits a deep point at a given
offset.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np

from tukey_privacy.depth.completion import projection_intervals, tdc_eval
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.svt import svt_depth_loss, svt_margin, svt_run

from .diameter import geometric_lengths
from .params import DPParams, EstimateReport, as_chain

logger = logging.getLogger(__name__)


def _unit(direction: Sequence[float]) -> np.ndarray:
    direction = np.asarray(direction, dtype=float)
    return direction / np.linalg.norm(direction)


def max_projection_steps(grid_exponent: int, upper: float, alpha: float) -> int:
    return max(1, math.ceil((2 * grid_exponent + 2 * math.log(upper)) / alpha))


def dp_max_projection(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    direction: Sequence[float],
    origin: Sequence[float],
    upper: float | None = None,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    Private headroom l of D(kappa) beyond `origin` along `direction`.

    With x = <origin, v>, tests TDC(x + l_i) along v for l_i = D (1 - alpha/2)^i
    and halts at the first noisy crossing of kappa. Guarantee:
    (1 - alpha) max_{y in D(kappa)} <y - origin, v> <= l and a point of depth
    kappa - Delta reaches x + l. Without a crossing the headroom is 0.

    Args:
        direction: v, normalized internally.
        origin: p, meant to lie in D(kappa).
        upper: D, bound on the headroom; defaults to the domain diameter.
    """
    chain = as_chain(data)
    source = params.source(noise)
    direction = _unit(direction)
    upper = chain.diameter_bound if upper is None else upper
    start = float(np.asarray(origin, dtype=float) @ direction)
    steps = max_projection_steps(chain.grid_exponent, upper, params.alpha)
    lengths = geometric_lengths(upper, params.alpha, steps)
    intervals = projection_intervals(chain, direction)

    def query(ell: float):
        return lambda: float(tdc_eval(intervals, start + ell))

    budget = PrivacyBudget().charge("svt", params.epsilon)
    trace = []
    halted = svt_run(
        [query(ell) for ell in lengths],
        threshold=kappa,
        epsilon=params.epsilon,
        margin=svt_margin(steps + 2, params.beta, params.epsilon),
        noise=source,
        trace=trace,
    )
    value = float(lengths[halted]) if halted is not None else 0.0
    return EstimateReport(
        value=value,
        delta_depth=svt_depth_loss(steps + 2, params.beta, params.epsilon),
        budget=budget,
        trace=trace,
        details={"start": start, "steps": steps, "halted_at": halted},
    )


def dp_large_tdc_direction(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    directions: Sequence[Sequence[float]],
    origin: Sequence[float],
    offset: float,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    First direction v (in order) whose slice <y, v> = <origin, v> + offset
    holds a point of depth about kappa, (epsilon, 0)-DP.

    A single threshold draw X is shared across the scan. The returned
    direction guarantees a point q of depth >= kappa - 12 ln((|V|+1)/beta)/epsilon
    with <q, v> = <origin, v> + offset.

    Returns:
        EstimateReport whose value is the unit direction, or None when no
        direction passes.
    """
    chain = as_chain(data)
    source = params.source(noise)
    units = [_unit(v) for v in directions]
    origin = np.asarray(origin, dtype=float)

    def query(v: np.ndarray):
        return lambda: float(tdc_eval(projection_intervals(chain, v), float(origin @ v) + offset))

    count = len(units) + 1
    budget = PrivacyBudget().charge("svt", params.epsilon)
    trace = []
    halted = svt_run(
        [query(v) for v in units],
        threshold=kappa,
        epsilon=params.epsilon,
        margin=svt_margin(count, params.beta, params.epsilon),
        noise=source,
        trace=trace,
    )
    if halted is None:
        logger.debug(f"No direction of {len(units)} admits depth {kappa} at offset {offset}")
    return EstimateReport(
        value=units[halted] if halted is not None else None,
        delta_depth=svt_depth_loss(count, params.beta, params.epsilon),
        budget=budget,
        trace=trace,
        details={"index": halted, "directions": len(units)},
    )
