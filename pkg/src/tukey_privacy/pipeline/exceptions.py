"""Custom exceptions for the end-to-end pipeline."""

from tukey_privacy.core.exceptions import TukeyPrivacyError


class PipelineError(TukeyPrivacyError):
    """Base exception for pipeline runs."""

    pass


class AbortTooSmall(PipelineError):
    """The noisy dataset size is below 2(d+1)m."""

    def __init__(self, message: str, noisy_count: float | None = None, required: int | None = None):
        self.noisy_count = noisy_count
        self.required = required
        super().__init__(message)


class StageError(PipelineError):
    """A library error raised inside a pipeline stage."""

    def __init__(self, message: str, stage: str | None = None):
        self.stage = stage
        super().__init__(message)
