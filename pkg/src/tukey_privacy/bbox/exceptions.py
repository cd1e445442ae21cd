"""Custom exceptions for bounding boxes and fattening transforms."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class BBoxError(TukeyPrivacyError):
    """Base exception for bounding-box computations."""

    pass


class BoxSearchFailed(BBoxError):
    """No cover direction admitted a deep point at the required offset."""

    def __init__(self, message: str, level: int | None = None):
        self.level = level
        super().__init__(message)


class DegenerateBox(BBoxError):
    """Box axes are not orthonormal, or an extent is too short to rescale."""

    def __init__(self, message: str, axis: int | None = None):
        self.axis = axis
        super().__init__(message)
