"""Private width of a Tukey region."""

import logging
import math

import numpy as np

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.completion import projection_spans
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.geometry.directions import angle_cover
from tukey_privacy.geometry.polytope import geometry_tolerance
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.svt import svt_depth_loss, svt_margin, svt_run

from .diameter import geometric_lengths
from .params import DPParams, EstimateReport, as_chain

logger = logging.getLogger(__name__)


def width_cover_angle(ell: float, alpha: float, upper: float, lower: float) -> float:
    """min(alpha*l/(4D), 1/2), floored at alpha*B/(4D)."""
    return max(min(alpha * ell / (4.0 * upper), 0.5), alpha * lower / (4.0 * upper))


def width_steps(upper: float, lower: float, alpha: float) -> int:
    return max(1, math.ceil(2.0 * math.log(upper / lower) / alpha))


def width_depth_loss(upper: float, lower: float, params: DPParams) -> float:
    """Delta^width of dp_width with these bounds."""
    return svt_depth_loss(width_steps(upper, lower, params.alpha) + 2, params.beta, params.epsilon)


def dp_width(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    upper: float | None = None,
    lower: float | None = None,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    (alpha, Delta)-approximation of width(D(kappa)), (epsilon, 0)-DP.

    Lengths l_i = D (1 - alpha/2)^i run from the diameter bound D down to
    the width bound B. At step i the cover is refined to angle
    alpha*l_i/(4D) and the query is the worst cover direction's whole-line
    l_i-TDC: it reaches kappa whenever width(D(kappa)) >= l_i.

    Args:
        upper: D >= diam(D(kappa)); defaults to the domain diameter.
        lower: B > 0, a lower bound on the width; defaults to the grid step.

    Raises:
        ValidationError: If lower <= 0 or upper <= 0.
        CoverTooLarge: If a refined cover exceeds TUKEY_COVER_CAP.
    """
    chain = as_chain(data)
    source = params.source(noise)
    if upper is None:
        upper = chain.diameter_bound
    if lower is None:
        lower = chain.grid_step
        logger.warning(
            f"No width lower bound given; using the grid step {lower}. "
            "The scan length and cover size grow with 1/B."
        )
    if lower <= 0:
        raise ValidationError(f"Width lower bound must be positive, got {lower}", field="lower")
    if upper <= 0:
        raise ValidationError(f"Diameter upper bound must be positive, got {upper}", field="upper")

    alpha = params.alpha
    steps = width_steps(upper, lower, alpha)
    lengths = geometric_lengths(upper, alpha, steps)
    tol = geometry_tolerance()

    def query(ell: float):
        def evaluate() -> float:
            cover = angle_cover(width_cover_angle(ell, alpha, upper, lower), chain.dim)
            spans = projection_spans(chain, cover.directions)
            return float(np.sum(spans >= ell - tol, axis=0).min(initial=chain.kappa_max))

        return evaluate

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
    logger.debug(f"Private width at depth {kappa}: {value} after {len(trace)} queries")
    return EstimateReport(
        value=value,
        delta_depth=svt_depth_loss(steps + 2, params.beta, params.epsilon),
        budget=budget,
        trace=trace,
        details={"steps": steps, "upper": upper, "lower": lower, "halted_at": halted},
    )
