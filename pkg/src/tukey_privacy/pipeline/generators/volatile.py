"""
Adversarial family whose deep region hinges on a single point.

Clusters sit at the cube center +-OFFSET along every axis. The clusters on
the last axis ("top" and "bottom") hold kappa and kappa - 1 points; the
last row is the top point that makes the difference. With it, D(kappa) is
a pyramid over the base clusters reaching up to the top cluster. Without
it, both open sides of the base hyperplane hold kappa - 1 points and
D(kappa) collapses onto that hyperplane.
"""

import numpy as np

from tukey_privacy.core.exceptions import ValidationError

from .base import BasePointGenerator, GeneratorConfig
from .registry import register_generator


@register_generator
class VolatileDepthGenerator(BasePointGenerator):
    """Clustered set whose last point decides the width of D(kappa)."""

    family_name = "volatile-depth"
    display_name = "Volatile Depth"
    description = "Removing the last point collapses the width of D(kappa)"
    supported_dims = (2, 3)

    OFFSET = 0.375

    def min_points(self, dim: int) -> int:
        return 4 * dim + 2

    def target_kappa(self, config: GeneratorConfig) -> int:
        return max(2, config.n // (2 + 4 * (config.dim - 1)))

    def cluster_sizes(self, config: GeneratorConfig) -> tuple[int, int, list[int]]:
        """(top, bottom, base) counts; top includes the pivot point."""
        kappa = self.target_kappa(config)
        top, bottom = kappa, kappa - 1
        base_clusters = 2 * (config.dim - 1)
        remaining = config.n - top - bottom
        base = [remaining // base_clusters + (1 if i < remaining % base_clusters else 0) for i in range(base_clusters)]
        if min(base) < kappa:
            raise ValidationError(
                f"{config.n} points leave base clusters of {min(base)} < kappa = {kappa}", field="n"
            )
        return top, bottom, base

    def sample(self, config: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
        dim = config.dim
        top, bottom, base = self.cluster_sizes(config)
        center = np.full(dim, 0.5)
        axis = np.eye(dim)
        rows = []
        for i, count in enumerate(base):
            sign = 1.0 if i % 2 == 0 else -1.0
            rows.extend([center + sign * self.OFFSET * axis[i // 2]] * count)
        rows.extend([center - self.OFFSET * axis[-1]] * bottom)
        # The pivot is the last top point
        rows.extend([center + self.OFFSET * axis[-1]] * top)
        return np.array(rows)

    def describe(self, config: GeneratorConfig) -> dict:
        top, bottom, base = self.cluster_sizes(config)
        return {
            "kappa": self.target_kappa(config),
            "pivot_index": config.n - 1,
            "top": top,
            "bottom": bottom,
            "base": base,
        }
