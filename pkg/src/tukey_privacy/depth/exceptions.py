"""Custom exceptions for Tukey depth computations."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class DepthError(TukeyPrivacyError):
    """Base exception for depth computations."""

    pass


class EmptyRegion(DepthError):
    """The region chain ends before the requested depth."""

    def __init__(self, message: str, kappa: int | None = None, kappa_max: int | None = None):
        self.kappa = kappa
        self.kappa_max = kappa_max
        super().__init__(message)
