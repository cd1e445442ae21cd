"""Uniform points in the unit cube."""

import numpy as np

from .base import BasePointGenerator, GeneratorConfig
from .registry import register_generator


@register_generator
class UniformGenerator(BasePointGenerator):
    """Independent uniform coordinates."""

    family_name = "uniform"
    display_name = "Uniform"
    description = "Uniform points in [0,1]^d"

    def sample(self, config: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
        return rng.random((config.n, config.dim))
