import logging

import numpy as np

from tukey_privacy.kappa.exceptions import MTooSmall
from tukey_privacy.kappa.mechanism import minimum_m, shifted_exp_privacy_loss
from tukey_privacy.kappa.query import build_query_table

from ._base import CommandOutcome, TukeyCommand

logger = logging.getLogger(__name__)

# Slack on the privacy-loss comparison
LOSS_TOLERANCE = 1e-9


class Command(TukeyCommand):
    help = "Analytic privacy audit of kappa selection on random neighbouring datasets (not private)"
    command_name = "audit"

    def add_command_arguments(self, parser):
        parser.add_argument("--m", type=int, default=None, help="Index range (default: ceil(16/epsilon))")
        parser.add_argument("--pairs", type=int, default=10, help="Number of neighbouring datasets")

    def config_overrides(self, options):
        return {"m": options["m"]}

    def execute_command(self, points, config, options):
        epsilon = config.epsilon
        m = config.m if config.m is not None else minimum_m(epsilon)
        if m < 16.0 / epsilon:
            raise MTooSmall(f"m = {m} is below 16/epsilon = {16.0 / epsilon:.1f}", m=m, minimum=16.0 / epsilon)
        logger.warning("NOT PRIVATE: the audit reads the raw data")

        rng = np.random.default_rng(options["seed"] if options["seed"] is not None else 0)
        scale = 2**points.grid_exponent
        base = build_query_table(points, m)
        pairs = []
        for _ in range(options["pairs"]):
            added = np.round(rng.random(points.dim) * scale) / scale
            grown = build_query_table(points.with_point(added), m)
            pairs.append(
                {
                    "added": added,
                    "q_shift": int(np.abs(base.q[:-1] - grown.q[1:]).max()) if m > 1 else 0,
                    "privacy_loss": shifted_exp_privacy_loss(base.q, grown.q, epsilon),
                }
            )
        worst = max((pair["privacy_loss"] for pair in pairs), default=0.0)
        return CommandOutcome(
            result={
                "m": m,
                "epsilon": epsilon,
                "max_q": base.max_q,
                "pairs": pairs,
                "max_privacy_loss": worst,
                "passes": worst <= epsilon + LOSS_TOLERANCE
                and all(pair["q_shift"] <= 1 for pair in pairs),
            }
        )
