"""Registry for synthetic point generators."""

from typing import TYPE_CHECKING

from tukey_privacy.core.exceptions import ValidationError

if TYPE_CHECKING:
    from .base import BasePointGenerator, GeneratedPoints


class PointGeneratorRegistry:
    """
    Registry for synthetic point generators.

    Generators are registered using the @register_generator decorator.
    The registry is populated when the pipeline app is ready.
    """

    _generators: dict[str, "BasePointGenerator"] = {}

    @classmethod
    def register(cls, generator: "BasePointGenerator") -> None:
        """Register a generator instance."""
        cls._generators[generator.family_name] = generator

    @classmethod
    def get_generator(cls, family: str) -> "BasePointGenerator | None":
        """Get a generator by family name."""
        return cls._generators.get(family)

    @classmethod
    def get_all_generators(cls) -> dict[str, "BasePointGenerator"]:
        """Get all registered generators."""
        return cls._generators.copy()

    @classmethod
    def get_choices(cls) -> list[tuple[str, str]]:
        """
        Get choices for command-line options.

        Returns list of (family_name, display_name) tuples.
        """
        return [(name, gen.display_name) for name, gen in cls._generators.items()]

    @classmethod
    def get_for_dimension(cls, dim: int) -> list["BasePointGenerator"]:
        """Get generators supporting a specific dimension."""
        return [gen for gen in cls._generators.values() if dim in gen.supported_dims]

    @classmethod
    def clear(cls) -> None:
        """Clear all registered generators. Useful for testing."""
        cls._generators.clear()


def register_generator(cls):
    """
    Class decorator to register a point generator.

    Usage:
        @register_generator
        class MyGenerator(BasePointGenerator):
            family_name = "my-family"
            ...
    """
    PointGeneratorRegistry.register(cls())
    return cls


def generate_synthetic(
    family: str, n: int, dim: int, seed: int, grid_exponent: int = 10
) -> "GeneratedPoints":
    """
    Generate a grid-snapped synthetic point set.

    Raises:
        ValidationError: On an unknown family or an invalid size/dimension.
    """
    from .base import GeneratorConfig

    generator = PointGeneratorRegistry.get_generator(family)
    if generator is None:
        known = ", ".join(sorted(PointGeneratorRegistry.get_all_generators()))
        raise ValidationError(f"Unknown family {family!r}; choose one of {known}", field="family")
    return generator.generate(GeneratorConfig(n=n, dim=dim, seed=seed, grid_exponent=grid_exponent))
