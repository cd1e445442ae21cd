"""Custom exceptions for exact geometry."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class GeometryError(TukeyPrivacyError):
    """Base exception for geometric computations."""

    pass


class DegenerateInput(GeometryError):
    """Input points do not span the ambient dimension."""

    def __init__(self, message: str, rank: int | None = None, dim: int | None = None):
        self.rank = rank
        self.dim = dim
        super().__init__(message)


class Unbounded(GeometryError):
    """Halfspace intersection or LP objective is unbounded."""

    pass


class Infeasible(GeometryError):
    """LP constraints admit no solution."""

    pass


class UnsupportedDimension(GeometryError):
    """Operation is only implemented for low dimensions."""

    def __init__(self, message: str, dim: int | None = None):
        self.dim = dim
        super().__init__(message)


class CoverTooLarge(GeometryError):
    """Direction cover exceeds the configured size cap."""

    def __init__(self, message: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(message)
