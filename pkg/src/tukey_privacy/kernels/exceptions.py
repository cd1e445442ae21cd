"""Custom exceptions for kernel construction."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class KernelError(TukeyPrivacyError):
    """Base exception for kernel construction."""

    pass


class CellBudgetOverflow(KernelError):
    """The cell partition of the unit cube exceeds TUKEY_CELL_CAP."""

    def __init__(self, message: str, cells: int | None = None, cap: int | None = None):
        self.cells = cells
        self.cap = cap
        super().__init__(message)
