"""
Selection mechanisms: the exponential mechanism sampler and a generic
private selection loop over randomized candidate mechanisms.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from django.conf import settings
from scipy.special import logsumexp

from .noise import NoiseSource

logger = logging.getLogger(__name__)


def exp_mechanism_sample(weights: Sequence[float], noise: NoiseSource) -> int:
    """
    Index i with probability weights[i] / sum(weights).

    Disabled noise returns the argmax, lowest index on ties.
    """
    weights = np.asarray(weights, dtype=float)
    if weights.size == 0 or np.any(weights < 0) or not np.any(weights > 0):
        raise ValueError("Weights must be non-negative with a positive entry")
    if not noise.enabled:
        return int(np.argmax(weights))
    return int(noise.rng.choice(weights.size, p=weights / weights.sum()))


def sample_from_log_weights(log_weights: Sequence[float], noise: NoiseSource) -> int:
    """Exponential-mechanism draw from log-weights without overflow."""
    log_weights = np.asarray(log_weights, dtype=float)
    if not noise.enabled:
        return int(np.argmax(log_weights))
    probabilities = np.exp(log_weights - logsumexp(log_weights))
    return int(noise.rng.choice(log_weights.size, p=probabilities / probabilities.sum()))


@dataclass
class SelectionOutcome:
    """Result of a private selection run."""

    index: int | None  # best candidate, None when nothing was scored
    score: float
    payload: Any
    rounds: int
    history: list[tuple[int, float]] = field(default_factory=list)  # debug only


def private_selection(
    candidates: Sequence[Callable[[NoiseSource], tuple[float, Any]]],
    stop_probability: float,
    noise: NoiseSource,
    max_rounds: int | None = None,
) -> SelectionOutcome:
    """
    Repeatedly run a uniformly chosen candidate; stop after each round with
    probability stop_probability; return the best scored run.

    Each candidate is a randomized mechanism returning (score, payload).
    With disabled noise every candidate runs exactly once, in order, and the
    highest score wins (lowest index on ties).

    Args:
        candidates: Randomized mechanisms.
        stop_probability: gamma in (0, 1].
        noise: Random stream; each run gets its own child stream.
        max_rounds: Safety cap (defaults to TUKEY_SELECTION_MAX_ROUNDS).
    """
    if not 0 < stop_probability <= 1:
        raise ValueError(f"stop_probability must lie in (0, 1], got {stop_probability}")
    max_rounds = max_rounds or settings.TUKEY_SELECTION_MAX_ROUNDS

    best = SelectionOutcome(index=None, score=float("-inf"), payload=None, rounds=0)

    def consider(index: int, stream: NoiseSource) -> None:
        score, payload = candidates[index](stream)
        best.history.append((index, float(score)))
        if score > best.score:
            best.index, best.score, best.payload = index, float(score), payload

    if not noise.enabled:
        for index in range(len(candidates)):
            consider(index, noise)
        best.rounds = len(candidates)
        return best

    while best.rounds < max_rounds:
        best.rounds += 1
        index = int(noise.rng.integers(len(candidates)))
        consider(index, noise.child())
        if noise.rng.random() < stop_probability:
            return best
    logger.warning(f"Private selection hit the {max_rounds}-round safety cap")
    return best
