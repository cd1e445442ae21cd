"""Sparse Vector Technique with one shared threshold draw."""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from .noise import NoiseSource

logger = logging.getLogger(__name__)


@dataclass
class SVTStep:
    """One comparison of a run (debug only, not privacy-safe)."""

    index: int
    value: float
    query_noise: float
    threshold_noise: float
    halted: bool


def svt_run(
    queries: Sequence[Callable[[], float]],
    threshold: float,
    epsilon: float,
    margin: float,
    noise: NoiseSource,
    trace: list[SVTStep] | None = None,
) -> int | None:
    """
    Halt at the first query whose noisy value clears the noisy threshold.

    One X ~ Lap(3/epsilon) is shared by all comparisons and each query gets
    a fresh Y_i ~ Lap(3/epsilon). The run halts at the first i with
    q_i + Y_i >= threshold - margin + X. Queries are evaluated lazily and
    in order, so nothing past the halting index is computed.

    Args:
        queries: Sensitivity-1 query evaluators, in order.
        threshold: Comparison threshold (usually a depth).
        epsilon: Privacy parameter of the whole run.
        margin: Margin subtracted from the threshold (zeroed when disabled).
        noise: Random stream.
        trace: Optional list receiving one SVTStep per evaluated query.

    Returns:
        The halting index, or None when no query clears the threshold.
    """
    scale = 3.0 / epsilon
    shared = noise.laplace(scale)
    level = threshold - noise.margin(margin) + shared
    for index, query in enumerate(queries):
        value = float(query())
        fresh = noise.laplace(scale)
        halted = value + fresh >= level
        if trace is not None:
            trace.append(SVTStep(index, value, fresh, shared, halted))
        if halted:
            logger.debug(f"SVT halted at query {index} (value {value}, threshold {threshold})")
            return index
    logger.debug(f"SVT exhausted {len(queries)} queries without halting")
    return None


def svt_margin(count: int, beta: float, epsilon: float) -> float:
    """Threshold margin 6 ln(count / beta) / epsilon."""
    return 6.0 * math.log(count / beta) / epsilon


def svt_depth_loss(count: int, beta: float, epsilon: float) -> float:
    """Depth loss 12 ln(count / beta) / epsilon of an SVT-based estimator."""
    return 12.0 * math.log(count / beta) / epsilon
