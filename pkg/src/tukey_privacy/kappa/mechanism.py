"""
Shifted exponential mechanism for choosing a depth.

Draw kappa in [m] with probability proportional to exp(epsilon q(kappa) / 8),
then add discrete Laplace noise of scale 8/epsilon. q(1) = q(m) = 0 and the
one-index shift of q between neighbours make the output epsilon-DP for
epsilon < 1 and m >= 16/epsilon. Outputs may fall outside [1, m].
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
from scipy.special import logsumexp

from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.params import DPParams, EstimateReport
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource, discrete_laplace_pmf, sample_discrete_laplace
from tukey_privacy.privacy.selection import sample_from_log_weights

from .exceptions import MTooSmall
from .query import KappaQueryTable, build_query_table

logger = logging.getLogger(__name__)

# Probability mass allowed outside the window of an exact output pmf
PMF_TAIL = 1e-12


def minimum_m(epsilon: float) -> int:
    return math.ceil(16.0 / epsilon)


def utility_loss(m: int, epsilon: float, beta: float) -> float:
    """17 ln(2m/beta) / epsilon: with probability 1 - beta the output is this close to max q."""
    return 17.0 * math.log(2.0 * m / beta) / epsilon


def shifted_exp_mechanism(
    data: PointSet | RegionChain | KappaQueryTable,
    m: int,
    params: DPParams,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    Private kappa with large q(kappa), epsilon-DP.

    Args:
        data: Points, their region chain, or a precomputed q table.
        m: Index range; must be at least 16/epsilon.
        params: epsilon, beta and the noise mode.

    Returns:
        EstimateReport whose value is kappa + X (any integer), with the
        sampled index, the shift and the q table in details.

    Raises:
        MTooSmall: If m < 16/epsilon.
    """
    epsilon = params.epsilon
    if m < 16.0 / epsilon:
        raise MTooSmall(
            f"m = {m} is below 16/epsilon = {16.0 / epsilon:.1f}", m=m, minimum=16.0 / epsilon
        )
    if epsilon >= 1:
        logger.warning(f"The shifted exponential mechanism is only proven private for epsilon < 1, got {epsilon}")
    table = data if isinstance(data, KappaQueryTable) else build_query_table(data, m)
    source = params.source(noise)

    sampled = sample_from_log_weights(epsilon / 8.0 * table.q, source) + 1
    shift = sample_discrete_laplace(8.0 / epsilon, source)
    value = sampled + shift
    logger.info(f"Shifted exponential mechanism chose kappa = {value} (max q = {table.max_q})")
    return EstimateReport(
        value=value,
        delta_depth=utility_loss(m, epsilon, params.beta),
        budget=PrivacyBudget().charge("shifted_exponential", epsilon),
        details={"sampled": sampled, "shift": shift, "table": table},
    )


def output_window(epsilon: float, tail: float = PMF_TAIL) -> int:
    """Half-width W of the discrete Laplace support kept so the lost mass is below `tail`."""
    r = math.exp(-epsilon / 8.0)
    # Pr[|X| > W] = 2 r^(W+1) / (1 + r)
    return max(1, math.ceil(math.log(tail * (1 + r) / 2.0) / math.log(r)))


def shifted_exp_output_pmf(
    q: Sequence[int], epsilon: float, window: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """
    Exact output distribution over j = 1 - W .. m + W.

    Returns:
        (support, pmf): the exponential-mechanism distribution convolved
        with the discrete Laplace pmf; the mass outside the window is below
        PMF_TAIL.
    """
    q = np.asarray(q, dtype=float)
    m = len(q)
    window = output_window(epsilon) if window is None else window
    log_weights = epsilon / 8.0 * q
    selection = np.exp(log_weights - logsumexp(log_weights))
    support = np.arange(1 - window, m + window + 1)
    shifts = support[:, None] - np.arange(1, m + 1)[None, :]
    return support, discrete_laplace_pmf(shifts, 8.0 / epsilon) @ selection


def shifted_exp_privacy_loss(q_first: Sequence[int], q_second: Sequence[int], epsilon: float) -> float:
    """max over the window of |ln Pr[M(P) = j] - ln Pr[M(P') = j]|, from exact pmfs."""
    window = output_window(epsilon)
    _, first = shifted_exp_output_pmf(q_first, epsilon, window)
    _, second = shifted_exp_output_pmf(q_second, epsilon, window)
    return float(np.max(np.abs(np.log(first) - np.log(second))))
