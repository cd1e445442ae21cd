"""Custom exceptions for mechanisms and accounting."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class PrivacyError(TukeyPrivacyError):
    """Base exception for mechanisms."""

    pass


class BudgetError(PrivacyError):
    """Invalid charge against a privacy budget."""

    def __init__(self, message: str, epsilon: float | None = None, delta: float | None = None):
        self.epsilon = epsilon
        self.delta = delta
        super().__init__(message)
