"""
Noise modes, seeded random streams, and the Laplace samplers.

Every mechanism takes an explicit NoiseSource. Sources are spawned from a
numpy SeedSequence so that independent streams never overlap. The disabled
mode turns every draw and every SVT margin into zero, which collapses each
mechanism to its non-private analogue for deterministic testing.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NoiseMode:
    """Seeded(seed) or Disabled."""

    seed: int | None = None

    @classmethod
    def seeded(cls, seed: int) -> "NoiseMode":
        return cls(seed=int(seed) & 0xFFFFFFFFFFFFFFFF)

    @classmethod
    def disabled(cls) -> "NoiseMode":
        return cls(seed=None)

    @property
    def enabled(self) -> bool:
        return self.seed is not None

    def source(self) -> "NoiseSource":
        """A fresh root stream for this mode."""
        return NoiseSource(self)

    def describe(self) -> str:
        return f"seeded({self.seed})" if self.enabled else "disabled"


class NoiseSource:
    """
    A random stream bound to a NoiseMode.

    Usage:
        noise = NoiseMode.seeded(7).source()
        x = noise.laplace(3 / epsilon)
        left, right = noise.spawn(2)
    """

    def __init__(self, mode: NoiseMode, seed_sequence: np.random.SeedSequence | None = None):
        self.mode = mode
        if seed_sequence is None and mode.enabled:
            seed_sequence = np.random.SeedSequence(mode.seed)
        self._seed_sequence = seed_sequence
        self._rng = np.random.Generator(np.random.PCG64(seed_sequence)) if mode.enabled else None

    @property
    def enabled(self) -> bool:
        return self.mode.enabled

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            raise RuntimeError("Disabled noise has no random generator")
        return self._rng

    def spawn(self, count: int = 1) -> list["NoiseSource"]:
        """Independent child streams."""
        if not self.enabled:
            return [NoiseSource(self.mode) for _ in range(count)]
        return [NoiseSource(self.mode, child) for child in self._seed_sequence.spawn(count)]

    def child(self) -> "NoiseSource":
        return self.spawn(1)[0]

    def margin(self, value: float) -> float:
        """SVT margin term; zero when noise is disabled."""
        return value if self.enabled else 0.0

    def laplace(self, scale: float) -> float:
        return sample_laplace(scale, self)

    def laplace_array(self, scale: float, size: int) -> np.ndarray:
        return sample_laplace_array(scale, size, self)

    def discrete_laplace(self, scale: float) -> int:
        return sample_discrete_laplace(scale, self)


def _as_source(noise: "NoiseSource | NoiseMode") -> NoiseSource:
    return noise.source() if isinstance(noise, NoiseMode) else noise


def sample_laplace(scale: float, noise: NoiseSource | NoiseMode) -> float:
    """
    Laplace(0, scale) by inverse CDF; 0.0 when disabled.

    Raises:
        ValueError: If scale is negative.
    """
    if scale < 0:
        raise ValueError(f"Laplace scale must be non-negative, got {scale}")
    source = _as_source(noise)
    if not source.enabled or scale == 0:
        return 0.0
    while True:
        u = float(source.rng.uniform(-0.5, 0.5))
        if abs(u) < 0.5:
            break
    return -scale * math.copysign(1.0, u) * math.log1p(-2.0 * abs(u))


def sample_laplace_array(scale: float, size: int, noise: NoiseSource | NoiseMode) -> np.ndarray:
    """`size` independent Laplace(0, scale) draws; zeros when disabled."""
    if scale < 0:
        raise ValueError(f"Laplace scale must be non-negative, got {scale}")
    source = _as_source(noise)
    if not source.enabled or scale == 0:
        return np.zeros(size)
    u = source.rng.uniform(-0.5, 0.5, size)
    while np.any(bad := np.abs(u) >= 0.5):
        u[bad] = source.rng.uniform(-0.5, 0.5, int(bad.sum()))
    return -scale * np.sign(u) * np.log1p(-2.0 * np.abs(u))


def sample_discrete_laplace(scale: float, noise: NoiseSource | NoiseMode) -> int:
    """
    Two-sided geometric with Pr[X = i] ∝ exp(-|i| / scale); 0 when disabled.

    Sampled as the difference of two i.i.d. geometric variables with
    success probability 1 - exp(-1/scale).
    """
    if scale <= 0:
        raise ValueError(f"Discrete Laplace scale must be positive, got {scale}")
    source = _as_source(noise)
    if not source.enabled:
        return 0
    p = -math.expm1(-1.0 / scale)
    return int(source.rng.geometric(p) - source.rng.geometric(p))


def discrete_laplace_pmf(i: int | np.ndarray, scale: float) -> float | np.ndarray:
    """Exact pmf: (1 - r) / (1 + r) * r^|i| with r = exp(-1/scale)."""
    r = math.exp(-1.0 / scale)
    return (1 - r) / (1 + r) * np.power(r, np.abs(i))
