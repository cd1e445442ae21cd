"""Private diameter of a Tukey region by a sparse-vector scan over lengths."""

import logging
import math

import numpy as np

from tukey_privacy.depth.completion import projection_spans
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.geometry.directions import angle_cover
from tukey_privacy.geometry.polytope import geometry_tolerance
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.svt import svt_depth_loss, svt_margin, svt_run

from .params import DPParams, EstimateReport, as_chain

logger = logging.getLogger(__name__)


def geometric_lengths(start: float, alpha: float, steps: int) -> np.ndarray:
    """start * (1 - alpha/2)^i for i = 0..steps."""
    return start * (1.0 - alpha / 2.0) ** np.arange(steps + 1)


def dp_diameter(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    (alpha, Delta)-approximation of diam(D(kappa)), (epsilon, 0)-DP.

    Scans the lengths l_i = D (1 - alpha/2)^i downwards, where D bounds the
    diameter of the coordinate domain. The query for l is the best whole-line
    l-TDC over a sqrt(alpha/2)-angle cover, i.e. the deepest level whose
    extent along some cover direction is at least l. The scan halts at the
    first length whose noisy query clears kappa; 0 when none does.

    Args:
        data: Point set or region chain.
        kappa: Target depth.
        params: epsilon, alpha, beta and noise mode.
        noise: Optional explicit stream (defaults to a fresh one from params.mode).

    Returns:
        EstimateReport with the length, Delta^diam = 12 ln((T+2)/beta)/epsilon
        and one SVT charge.
    """
    chain = as_chain(data)
    source = params.source(noise)
    dim, alpha = chain.dim, params.alpha
    zeta = math.sqrt(alpha / 2.0)
    steps = math.ceil((2 * chain.grid_exponent + math.log(dim)) / alpha)
    lengths = geometric_lengths(chain.diameter_bound, alpha, steps)
    cover = angle_cover(zeta, dim)
    spans = projection_spans(chain, cover.directions)
    tol = geometry_tolerance()

    def query(ell: float):
        return lambda: float(np.sum(spans >= ell - tol, axis=0).max(initial=0))

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
    logger.debug(f"Private diameter at depth {kappa}: {value} after {len(trace)} queries")
    return EstimateReport(
        value=value,
        delta_depth=svt_depth_loss(steps + 2, params.beta, params.epsilon),
        budget=budget,
        trace=trace,
        details={"steps": steps, "zeta": zeta, "cover_size": len(cover), "halted_at": halted},
    )
