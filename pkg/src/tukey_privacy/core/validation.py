"""Range checks shared by parameter dataclasses and the CLI."""

import math

from .exceptions import ValidationError


def require_positive(name: str, value: float) -> float:
    if not math.isfinite(value) or value <= 0:
        raise ValidationError(f"{name} must be positive, got {value}", field=name)
    return value


def require_nonnegative(name: str, value: float) -> float:
    if not math.isfinite(value) or value < 0:
        raise ValidationError(f"{name} must be non-negative, got {value}", field=name)
    return value


def require_open_interval(name: str, value: float, low: float, high: float) -> float:
    """Check low < value < high."""
    if not (low < value < high):
        raise ValidationError(
            f"{name} must lie in ({low}, {high}), got {value}", field=name
        )
    return value


def require_int_range(name: str, value: int, low: int, high: int | None = None) -> int:
    """Check low <= value (<= high when given)."""
    if value < low or (high is not None and value > high):
        bound = f"[{low}, {high}]" if high is not None else f">= {low}"
        raise ValidationError(f"{name} must be {bound}, got {value}", field=name)
    return value
