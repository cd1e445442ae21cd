"""
Private choice of a fatness constant.

Candidate i asserts (2^i, Gamma_i)-fatness. Each candidate estimates the
diameter of D(kappa - Gamma_i) and the width of D(kappa + Delta^width)
privately and scores 2^-i when the pair is consistent with the assertion.
A private selection loop over the candidates returns the best score.
"""

import logging
import math
from dataclasses import dataclass, field

from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.diameter import dp_diameter
from tukey_privacy.estimators.params import DPParams, as_chain
from tukey_privacy.estimators.width import dp_width, width_depth_loss
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.selection import private_selection

from .fat import fat_constants
from .fatness import relative_fatness_constant

logger = logging.getLogger(__name__)


@dataclass
class FatnessSelection:
    """Outcome of the fatness heuristic; `index` is None when every score was 0."""

    index: int | None
    c: float | None
    gamma: float | None
    score: float
    rounds: int
    budget: PrivacyBudget = field(default_factory=PrivacyBudget)
    history: list[tuple[int, float]] = field(default_factory=list)  # debug only


def candidate_count(c_max: float) -> int:
    return max(1, math.ceil(math.log2(c_max)))


def fatness_select(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    noise: NoiseSource | None = None,
    c_max: float | None = None,
    max_rounds: int | None = None,
) -> FatnessSelection:
    """
    Select i (and c_i = 2^i, Gamma_i) by private selection, 6 epsilon-DP.

    Every candidate run spends epsilon on a diameter and epsilon on a width
    estimate; the loop stops after each round with probability 1/(3t),
    t = ceil(log2 c_max), and the per-run failure probability is
    beta / (12 t ln(2/beta)).

    Args:
        c_max: Largest constant tried; defaults to 4 d^(5/2) 5^d d!.
        params: delta is only used to size Gamma_i (cover kernel constants).
    """
    chain = as_chain(data)
    source = params.source(noise)
    c_max = relative_fatness_constant(chain.dim) if c_max is None else c_max
    count = candidate_count(c_max)
    run_beta = params.beta / (12.0 * count * math.log(2.0 / params.beta))
    run_params = DPParams(
        epsilon=params.epsilon, delta=params.delta, alpha=params.alpha, beta=run_beta, mode=params.mode
    )
    lower = chain.grid_step
    upper = chain.diameter_bound
    width_offset = params.offset(width_depth_loss(upper, lower, run_params))
    shrink = (1.0 - params.alpha) / (1.0 + params.alpha)

    def candidate(i: int):
        c = 2.0**i
        gamma = (
            fat_constants(chain, params, c)["gamma_kernel"] if 0 < params.delta < 1 else 0.0
        )

        def run(stream: NoiseSource) -> tuple[float, dict]:
            shallow = max(1, math.floor(kappa - params.offset(gamma)))
            deep = math.ceil(kappa + width_offset)
            diameter = dp_diameter(chain, shallow, run_params, stream).value
            width = dp_width(chain, deep, run_params, upper=upper, lower=lower, noise=stream).value
            score = 2.0**-i if diameter <= c * shrink * width else 0.0
            return score, {"c": c, "gamma": gamma, "diameter": diameter, "width": width}

        return run

    outcome = private_selection(
        [candidate(i) for i in range(1, count + 1)],
        stop_probability=1.0 / (3 * count),
        noise=source,
        max_rounds=max_rounds,
    )
    budget = PrivacyBudget().charge("private_selection", 6.0 * params.epsilon)
    if outcome.index is None or outcome.score <= 0:
        logger.info(f"Fatness selection found no consistent constant after {outcome.rounds} rounds")
        return FatnessSelection(None, None, None, 0.0, outcome.rounds, budget, outcome.history)
    logger.info(f"Fatness selection chose c = {outcome.payload['c']} after {outcome.rounds} rounds")
    return FatnessSelection(
        index=outcome.index + 1,
        c=outcome.payload["c"],
        gamma=outcome.payload["gamma"],
        score=outcome.score,
        rounds=outcome.rounds,
        budget=budget,
        history=outcome.history,
    )
