from dataclasses import dataclass, field
from typing import Any

import numpy as np

from tukey_privacy.privacy.budget import PrivacyBudget


@dataclass
class KernelResult:
    """A private kernel S for D(kappa) and the constants of its guarantee."""

    kappa: int
    points: np.ndarray  # (|S|, d); may be empty when no cell passes
    alpha: float
    gamma_kernel: float  # depth loss of the guarantee
    method: str
    base: np.ndarray | None = None  # the inner point c, absent for the grid kernel
    budget: PrivacyBudget = field(default_factory=PrivacyBudget)
    certification: Any = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def pulled_back(self, inverse) -> "KernelResult":
        """Kernel mapped through an affine inverse (callable on (n, d) arrays)."""
        base = inverse(self.base[None, :])[0] if self.base is not None else None
        points = inverse(self.points) if len(self.points) else self.points
        return KernelResult(
            kappa=self.kappa,
            points=points,
            alpha=self.alpha,
            gamma_kernel=self.gamma_kernel,
            method=self.method,
            base=base,
            budget=self.budget,
            certification=self.certification,
            details=dict(self.details),
        )
