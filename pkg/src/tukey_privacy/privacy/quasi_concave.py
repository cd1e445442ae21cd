"""
Private maximization of a quasi-concave function on a grid by noisy
binary search.

At each level the two halves of the current index range are compared
through their noisy interval maxima (each perturbed with Lap(L/epsilon)
for L levels) and the search recurses into the larger half, ties going
left. The result is within alpha_qc of the maximum with probability
1 - beta, where alpha_qc = c * (L + ln(1/beta)) / epsilon.
"""

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

from django.conf import settings

from tukey_privacy.core.validation import require_nonnegative, require_positive

from .noise import NoiseSource

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuasiConcaveOracle:
    """
    Grid points origin + i * step for i in [0, size) and an interval-max oracle.

    `evaluate(i, j)` returns max over grid indices i..j (inclusive) of q.
    """

    evaluate: Callable[[int, int], float]
    size: int
    origin: float
    step: float

    def point(self, index: int) -> float:
        return self.origin + index * self.step


def search_levels(size: int) -> int:
    """Number of halvings needed to isolate one of `size` grid points."""
    return max(1, math.ceil(math.log2(max(size, 2))))


def qc_alpha(size: int, epsilon: float, beta: float) -> float:
    """Utility loss alpha_qc of dp_binary_search_qc on `size` grid points."""
    return settings.TUKEY_QC_CONSTANT * (search_levels(size) + math.log(1.0 / beta)) / epsilon


def qc_alpha_for_exponent(grid_exponent: int, epsilon: float, beta: float, span: float = 1.0) -> float:
    """alpha_qc for a coordinate range of length `span` on the 2^-u grid."""
    size = int(math.floor(span * 2**grid_exponent)) + 1
    return qc_alpha(size, epsilon, beta)


def dp_binary_search_qc(
    oracle: QuasiConcaveOracle,
    epsilon: float,
    beta: float,
    noise: NoiseSource,
    delta: float = 0.0,
) -> float:
    """
    Grid point approximately maximizing a quasi-concave q, epsilon-DP.

    Args:
        oracle: Grid and interval-max oracle of a sensitivity-1 quasi-concave q.
        epsilon: Privacy parameter of the whole search.
        beta: Failure probability used for the reported utility bound.
        noise: Random stream.
        delta: Accepted for a uniform (epsilon, delta) call shape. The search
            is pure epsilon-DP whatever its value, so it only has to be a
            non-negative number and never changes the result.

    Returns:
        The selected grid point.

    Raises:
        ValidationError: If epsilon <= 0 or delta < 0.
    """
    require_positive("epsilon", epsilon)
    require_nonnegative("delta", delta)
    levels = search_levels(oracle.size)
    scale = levels / epsilon
    low, high = 0, oracle.size - 1
    while low < high:
        middle = (low + high) // 2
        left = oracle.evaluate(low, middle) + noise.laplace(scale)
        right = oracle.evaluate(middle + 1, high) + noise.laplace(scale)
        if left >= right:
            high = middle
        else:
            low = middle + 1
    logger.debug(
        f"Binary search picked grid index {low} of {oracle.size} "
        f"(alpha_qc={qc_alpha(oracle.size, epsilon, beta):.3f})"
    )
    return oracle.point(low)
