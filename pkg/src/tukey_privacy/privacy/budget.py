"""Privacy budget ledger with basic and advanced composition."""

import math
from dataclasses import asdict, dataclass, field

from .exceptions import BudgetError


@dataclass
class BudgetEntry:
    """One charge: `count` invocations of a mechanism at (epsilon, delta) each."""

    mechanism: str
    epsilon: float
    delta: float = 0.0
    count: int = 1
    stage: str = ""


@dataclass
class PrivacyBudget:
    """
    Ledger of mechanism invocations.

    Usage:
        budget = PrivacyBudget()
        budget.charge("svt", 1.0)
        budget.epsilon_spent  # 1.0
    """

    entries: list[BudgetEntry] = field(default_factory=list)

    def charge(
        self,
        mechanism: str,
        epsilon: float,
        delta: float = 0.0,
        count: int = 1,
        stage: str = "",
    ) -> "PrivacyBudget":
        """
        Record a charge (basic composition).

        Raises:
            BudgetError: On a negative epsilon/delta or non-positive count.
        """
        if epsilon < 0 or delta < 0 or not math.isfinite(epsilon) or not math.isfinite(delta):
            raise BudgetError(
                f"Charges must be non-negative and finite, got ({epsilon}, {delta})",
                epsilon=epsilon,
                delta=delta,
            )
        if count < 1:
            raise BudgetError(f"Charge count must be >= 1, got {count}")
        self.entries.append(BudgetEntry(mechanism, float(epsilon), float(delta), int(count), stage))
        return self

    def extend(self, other: "PrivacyBudget", stage: str | None = None) -> "PrivacyBudget":
        """Append another ledger's entries, optionally re-tagging their stage."""
        for entry in other.entries:
            self.entries.append(
                BudgetEntry(entry.mechanism, entry.epsilon, entry.delta, entry.count,
                            stage if stage is not None else entry.stage)
            )
        return self

    @property
    def epsilon_spent(self) -> float:
        return float(sum(e.epsilon * e.count for e in self.entries))

    @property
    def delta_spent(self) -> float:
        return float(sum(e.delta * e.count for e in self.entries))

    @property
    def invocations(self) -> int:
        return sum(e.count for e in self.entries)

    def by_stage(self) -> dict[str, tuple[float, float]]:
        totals: dict[str, tuple[float, float]] = {}
        for entry in self.entries:
            eps, delta = totals.get(entry.stage, (0.0, 0.0))
            totals[entry.stage] = (eps + entry.epsilon * entry.count, delta + entry.delta * entry.count)
        return totals

    @staticmethod
    def advanced(k: int, epsilon: float, delta: float) -> tuple[float, float]:
        """
        Aggregate of k mechanisms, each (epsilon, delta)-DP:
        (epsilon * sqrt(k * ln(1 / (k * delta))), 2 * k * delta).

        Raises:
            BudgetError: Unless k >= 1 and 0 < k * delta < 1.
        """
        if k < 1 or delta <= 0 or k * delta >= 1:
            raise BudgetError(
                f"Advanced composition needs k >= 1 and 0 < k*delta < 1, got k={k}, delta={delta}",
                epsilon=epsilon,
                delta=delta,
            )
        return epsilon * math.sqrt(k * math.log(1.0 / (k * delta))), 2 * k * delta

    def with_slack(self, delta: float) -> "PrivacyBudget":
        """Copy with every entry carrying the per-invocation composition slack `delta`."""
        return PrivacyBudget(
            [BudgetEntry(e.mechanism, e.epsilon, delta, e.count, e.stage) for e in self.entries]
        )

    def advanced_total(self) -> tuple[float, float]:
        """
        Advanced-composition aggregate of a ledger of identical charges.

        Raises:
            BudgetError: If the entries differ or carry no delta.
        """
        if not self.entries:
            return 0.0, 0.0
        epsilon, delta = self.entries[0].epsilon, self.entries[0].delta
        if not all(
            math.isclose(e.epsilon, epsilon) and math.isclose(e.delta, delta) for e in self.entries
        ):
            raise BudgetError("Advanced composition needs identical charges")
        return self.advanced(self.invocations, epsilon, delta)

    def to_dict(self) -> dict:
        return {
            "epsilon": self.epsilon_spent,
            "delta": self.delta_spent,
            "entries": [asdict(e) for e in self.entries],
        }


def budget_charge(ledger: PrivacyBudget, epsilon: float, delta: float = 0.0, mechanism: str = "manual") -> PrivacyBudget:
    """Basic-composition charge."""
    return ledger.charge(mechanism, epsilon, delta)


def budget_advanced(ledger: PrivacyBudget, k: int, epsilon: float, delta: float) -> tuple[float, float]:
    """Advanced-composition aggregate for k charges of (epsilon, delta)."""
    return ledger.advanced(k, epsilon, delta)
