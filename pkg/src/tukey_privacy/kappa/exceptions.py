"""Custom exceptions for depth selection."""

from tukey_privacy.core.exceptions import ValidationError


class MTooSmall(ValidationError):
    """The index range is too short for the shifted exponential mechanism."""

    def __init__(self, message: str, m: int | None = None, minimum: float | None = None):
        self.m = m
        self.minimum = minimum
        super().__init__(message, field="m")
