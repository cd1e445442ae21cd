"""Points on a spherical shell around the cube center."""

import numpy as np

from .base import BasePointGenerator, GeneratorConfig
from .registry import register_generator


@register_generator
class RingGenerator(BasePointGenerator):
    """
    Uniform directions, radii uniform in [INNER, OUTER].

    Deep regions of a ring are much smaller than its hull, which makes the
    family a good stress case for depth selection.
    """

    family_name = "ring"
    display_name = "Ring"
    description = "Annulus (d=2) or spherical shell (d=3) of radii 0.3 to 0.45"
    supported_dims = (2, 3)

    INNER = 0.3
    OUTER = 0.45

    def sample(self, config: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
        directions = rng.normal(size=(config.n, config.dim))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
        radii = rng.uniform(self.INNER, self.OUTER, size=(config.n, 1))
        return 0.5 + radii * directions
