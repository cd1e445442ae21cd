"""
Fatness assumptions on Tukey regions and the constants derived from them.

A region is c-absolutely fat when width(D(k)) >= 1/c, and (c, Delta)-fat
when width(D(k)) >= diam(D(k - Delta)) / c. The split form uses separate
offsets for the width and diameter sides.
"""

import math
from dataclasses import dataclass

from django.db import models

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.geometry.measures import diameter_exact, width_exact


class FatnessKind(models.TextChoices):
    ABSOLUTE = "absolute", "Absolutely fat"
    RELATIVE = "relative", "Fat relative to a shallower region"
    RELATIVE_SPLIT = "relative_split", "Fat with split depth offsets"


@dataclass(frozen=True)
class FatnessSpec:
    """
    A fatness assumption.

    Usage:
        FatnessSpec.relative(4.0, 2.0).implies(FatnessSpec.relative(8.0, 1.0))  # True
    """

    kind: FatnessKind
    c: float
    delta: float = 0.0  # RELATIVE offset
    delta_plus: float = 0.0  # RELATIVE_SPLIT, width side
    delta_minus: float = 0.0  # RELATIVE_SPLIT, diameter side

    def __post_init__(self):
        if self.c < 1:
            raise ValidationError(f"Fatness constant must be >= 1, got {self.c}", field="c")
        if min(self.delta, self.delta_plus, self.delta_minus) < 0:
            raise ValidationError("Fatness offsets must be non-negative", field="delta")

    @classmethod
    def absolute(cls, c: float) -> "FatnessSpec":
        return cls(FatnessKind.ABSOLUTE, float(c))

    @classmethod
    def relative(cls, c: float, delta: float) -> "FatnessSpec":
        return cls(FatnessKind.RELATIVE, float(c), delta=float(delta))

    @classmethod
    def relative_split(cls, c: float, delta_plus: float, delta_minus: float) -> "FatnessSpec":
        return cls(FatnessKind.RELATIVE_SPLIT, float(c), delta_plus=float(delta_plus), delta_minus=float(delta_minus))

    def offsets(self) -> tuple[float, float]:
        """(width-side, diameter-side) depth offsets."""
        if self.kind == FatnessKind.RELATIVE_SPLIT:
            return self.delta_plus, self.delta_minus
        return 0.0, self.delta

    def as_relative(self, dim: int) -> "FatnessSpec":
        """
        The relative form implied by this spec.

        Absolute fatness gives (c * sqrt(d), Delta)-fatness for every Delta,
        since no region in the unit cube is longer than sqrt(d); the offset
        is reported as infinite.
        """
        if self.kind == FatnessKind.ABSOLUTE:
            return FatnessSpec.relative(self.c * math.sqrt(dim), math.inf)
        return self

    def implies(self, other: "FatnessSpec", dim: int) -> bool:
        """Whether every region satisfying self also satisfies other."""
        if other.kind == FatnessKind.ABSOLUTE:
            return self.kind == FatnessKind.ABSOLUTE and self.c <= other.c
        mine, theirs = self.as_relative(dim), other
        mine_plus, mine_minus = mine.offsets()
        their_plus, their_minus = theirs.offsets()
        return mine.c <= theirs.c and their_plus <= mine_plus and their_minus <= mine_minus


def satisfies(chain: RegionChain, kappa: int, spec: FatnessSpec) -> bool:
    """Exact (non-private) check of a fatness assumption on a region chain."""
    region = chain.region(kappa + math.ceil(spec.offsets()[0])) if kappa >= 1 else None
    if region is None:
        return False
    width, _ = width_exact(region)
    if spec.kind == FatnessKind.ABSOLUTE:
        return width >= 1.0 / spec.c
    shallow = kappa - math.floor(spec.offsets()[1])
    outer = chain.region(max(shallow, 1)) if shallow >= 1 else None
    diameter = diameter_exact(outer)[0] if outer is not None else chain.diameter_bound
    return width >= diameter / spec.c


def absolute_fatness_constant(dim: int) -> float:
    """2 d 5^d d!: absolute fatness reached after the clamped fattening transform."""
    return 2.0 * dim * 5.0**dim * math.factorial(dim)


def relative_fatness_constant(dim: int) -> float:
    """4 d^(5/2) 5^d d!: relative fatness reached after the fattening transform."""
    return 4.0 * dim**2.5 * 5.0**dim * math.factorial(dim)
