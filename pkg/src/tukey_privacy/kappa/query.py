"""
The volume-ratio query q(kappa).

q(kappa) is the largest i <= min(kappa - 1, m - kappa) with
vol(D(kappa + i)) >= vol(D(kappa - i)) / 2. Two empty (or flat) regions
compare as equal. Adding one point shifts the table by one index and
changes each value by at most 1.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from tukey_privacy.core.validation import require_int_range
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.params import as_chain

logger = logging.getLogger(__name__)


@dataclass
class KappaQueryTable:
    """Volumes and q values for kappa = 1..m (index 0 holds kappa = 1)."""

    m: int
    volumes: np.ndarray
    q: np.ndarray

    def value(self, kappa: int) -> int:
        return int(self.q[kappa - 1])

    @property
    def best(self) -> int:
        """First kappa attaining the largest q."""
        return int(np.argmax(self.q)) + 1

    @property
    def max_q(self) -> int:
        return int(self.q.max())

    def to_dict(self) -> dict:
        return {"m": self.m, "volumes": self.volumes.tolist(), "q": self.q.astype(int).tolist()}


def _padded(volumes: Sequence[float], m: int) -> np.ndarray:
    values = np.zeros(m)
    given = np.asarray(volumes, dtype=float)[:m]
    values[: len(given)] = given
    return values


def q_query(volumes: Sequence[float], kappa: int, m: int) -> int:
    """
    q(kappa) from vol(D(1)), vol(D(2)), ... (missing entries count as 0).

    Raises:
        ValidationError: Unless 1 <= kappa <= m.
    """
    require_int_range("kappa", kappa, 1, m)
    values = _padded(volumes, m)
    reach = np.arange(min(kappa - 1, m - kappa) + 1)
    good = 2.0 * values[kappa - 1 + reach] >= values[kappa - 1 - reach]
    return int(reach[good].max())


def build_query_table(data: PointSet | RegionChain | Sequence[float], m: int) -> KappaQueryTable:
    """
    q(1..m) for a point set, a region chain, or a list of volumes.

    Volumes of D(1..m) are computed once from the memoized chain.
    """
    require_int_range("m", m, 1)
    if isinstance(data, (PointSet, RegionChain)):
        volumes = as_chain(data).volumes(m)
    else:
        volumes = _padded(data, m)
    q = np.array([q_query(volumes, kappa, m) for kappa in range(1, m + 1)], dtype=int)
    logger.debug(f"q table for m={m}: max {q.max()} at kappa {int(np.argmax(q)) + 1}")
    return KappaQueryTable(m=m, volumes=volumes, q=q)


def q_sensitivity_audit(points: PointSet, x: Sequence[float], m: int) -> int:
    """
    max over kappa < m of |q_P(kappa) - q_P'(kappa + 1)| for P' = P + {x}.

    Non-private; exact volumes on both datasets.
    """
    before = build_query_table(points, m)
    after = build_query_table(points.with_point(x), m)
    if m < 2:
        return 0
    return int(np.abs(before.q[:-1] - after.q[1:]).max())
