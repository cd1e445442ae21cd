"""Parameters and reports shared by the private estimators."""

from dataclasses import dataclass, field, replace
from typing import Any

from tukey_privacy.core.validation import (
    require_int_range,
    require_nonnegative,
    require_open_interval,
    require_positive,
)
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain, region_chain
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseMode, NoiseSource


@dataclass(frozen=True)
class DPParams:
    """
    Privacy and accuracy parameters of one estimator call.

    Usage:
        params = DPParams(epsilon=1.0, alpha=0.1, beta=0.05, mode=NoiseMode.seeded(7))
        dp_diameter(points, 3, params)
    """

    epsilon: float
    delta: float = 0.0
    alpha: float = 0.1
    beta: float = 0.05
    kappa: int = 1  # default depth for commands and the pipeline
    mode: NoiseMode = field(default_factory=NoiseMode.disabled)

    def __post_init__(self):
        require_positive("epsilon", self.epsilon)
        require_nonnegative("delta", self.delta)
        require_open_interval("alpha", self.alpha, 0.0, 0.5)
        require_open_interval("beta", self.beta, 0.0, 0.5)
        require_int_range("kappa", self.kappa, 1)

    def split(self, parts: int, delta_parts: int | None = None) -> "DPParams":
        """Parameters for one of `parts` sub-mechanisms (epsilon, delta and beta divided)."""
        return replace(
            self,
            epsilon=self.epsilon / parts,
            delta=self.delta / (delta_parts or parts),
            beta=self.beta / parts,
        )

    def source(self, noise: NoiseSource | None = None) -> NoiseSource:
        return noise if noise is not None else self.mode.source()

    def offset(self, value: float) -> float:
        """A depth offset (Delta, Gamma, alpha_qc) as used for depth arguments; 0 when disabled."""
        return value if self.mode.enabled else 0.0


@dataclass
class EstimateReport:
    """Output of an estimator together with its guarantee constant and charges."""

    value: Any
    delta_depth: float  # closed-form depth loss of the guarantee
    budget: PrivacyBudget = field(default_factory=PrivacyBudget)
    trace: list = field(default_factory=list)  # noisy values, debug only
    details: dict[str, Any] = field(default_factory=dict)


def as_chain(data: PointSet | RegionChain) -> RegionChain:
    """Region chain of a point set, or the chain itself."""
    return data if isinstance(data, RegionChain) else region_chain(data)
