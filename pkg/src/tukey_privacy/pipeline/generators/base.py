"""Base classes and dataclasses for synthetic point generators."""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.points import PointSet, snap_to_grid


@dataclass
class GeneratorConfig:
    """Configuration for generating a synthetic point set."""

    n: int
    dim: int
    seed: int
    grid_exponent: int = 10


@dataclass
class GeneratedPoints:
    """A generated point set and what the family knows about it."""

    points: PointSet
    family: str
    seed: int
    details: dict[str, Any] = field(default_factory=dict)


class BasePointGenerator(ABC):
    """
    Abstract base class for synthetic point families.

    To create a new family:
    1. Subclass BasePointGenerator
    2. Set class attributes (family_name, display_name, etc.)
    3. Implement sample()
    4. Decorate with @register_generator
    """

    # Class attributes to be defined by subclasses
    family_name: str = ""
    display_name: str = ""
    description: str = ""
    supported_dims: tuple[int, ...] = (1, 2, 3)

    @abstractmethod
    def sample(self, config: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
        """
        Raw coordinates in [0,1]^d, shape (n, d).

        Snapping to the grid is done by generate().
        """
        pass

    def min_points(self, dim: int) -> int:
        return dim + 1

    def describe(self, config: GeneratorConfig) -> dict[str, Any]:
        """Family-specific facts about a generated set (empty by default)."""
        return {}

    def validate_config(self, config: GeneratorConfig) -> list[str]:
        """
        Validate generator configuration.

        Returns list of validation error messages (empty if valid).
        """
        errors = []
        if config.dim not in self.supported_dims:
            errors.append(
                f"{self.display_name} supports dimensions {list(self.supported_dims)}, got {config.dim}"
            )
        if config.n < self.min_points(config.dim):
            errors.append(
                f"{self.display_name} needs at least {self.min_points(config.dim)} points "
                f"in dimension {config.dim}, got {config.n}"
            )
        return errors

    def generate(self, config: GeneratorConfig) -> GeneratedPoints:
        """
        Sample, clip to the unit cube and snap to the 2^-u grid.

        Raises:
            ValidationError: If the configuration is invalid for this family.
        """
        errors = self.validate_config(config)
        if errors:
            field_name = "n" if config.n < self.min_points(config.dim) else "dim"
            raise ValidationError("; ".join(errors), field=field_name)
        rng = np.random.default_rng(config.seed)
        raw = np.clip(self.sample(config, rng), 0.0, 1.0)
        points = PointSet.from_coordinates(snap_to_grid(raw, config.grid_exponent), config.grid_exponent)
        return GeneratedPoints(
            points=points,
            family=self.family_name,
            seed=config.seed,
            details=self.describe(config),
        )
