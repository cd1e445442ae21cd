"""Gaussian cloud clipped to the unit cube."""

import numpy as np

from .base import BasePointGenerator, GeneratorConfig
from .registry import register_generator


@register_generator
class GaussianClippedGenerator(BasePointGenerator):
    """Isotropic normal around the cube center; outliers land on the faces."""

    family_name = "gaussian-clipped"
    display_name = "Clipped Gaussian"
    description = "Normal(1/2, 0.15^2 I) clipped to [0,1]^d"

    CENTER = 0.5
    SCALE = 0.15

    def sample(self, config: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
        return rng.normal(self.CENTER, self.SCALE, size=(config.n, config.dim))
