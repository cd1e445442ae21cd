"""Synthetic point generators package."""

from .base import BasePointGenerator, GeneratedPoints, GeneratorConfig
from .registry import PointGeneratorRegistry, generate_synthetic, register_generator

# Import generators to trigger registration via @register_generator decorator
from . import gaussian, ring, uniform, volatile  # noqa: F401

__all__ = [
    "BasePointGenerator",
    "GeneratedPoints",
    "GeneratorConfig",
    "PointGeneratorRegistry",
    "generate_synthetic",
    "register_generator",
]
