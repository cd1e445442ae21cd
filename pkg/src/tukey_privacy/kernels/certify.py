"""
Non-private kernel diagnostics.

For a candidate kernel S, an inner body K_in and an outer body K_out, find
the smallest a' with (1 - a')(K_in - c) contained in CH(S) - c and
CH(S) - c contained in (1 + a')(K_out - c), for a few principled shifts c.
Certification is a diagnostic: failing it for the tried shifts does not
prove that no shift works.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from tukey_privacy.geometry.measures import chebyshev_center
from tukey_privacy.geometry.polytope import Polytope, geometry_tolerance, hull_of_points

logger = logging.getLogger(__name__)


@dataclass
class SideCertificate:
    """Best scale parameter on one side and where it was attained."""

    alpha: float  # inf when the shift lies outside the body
    shift: np.ndarray | None = None
    witness: np.ndarray | None = None  # unit direction of the binding vertex or facet


@dataclass
class Certification:
    inner: SideCertificate
    outer: SideCertificate
    target: float
    claimed_inner: float  # 2 a sqrt(d + 1/2)
    claimed_outer: float  # (a / (1 - a)) (1 + 4 sqrt(d + 1/2))
    shifts: dict[str, list[float]] = field(default_factory=dict)

    @property
    def passes(self) -> bool:
        return self.inner.alpha <= self.target and self.outer.alpha <= self.target

    def to_dict(self) -> dict:
        return {
            "inner_alpha": self.inner.alpha,
            "outer_alpha": self.outer.alpha,
            "target": self.target,
            "passes": self.passes,
            "claimed_inner": self.claimed_inner,
            "claimed_outer": self.claimed_outer,
            "inner_witness": None if self.inner.witness is None else self.inner.witness.tolist(),
            "outer_witness": None if self.outer.witness is None else self.outer.witness.tolist(),
            "shifts": self.shifts,
        }


def _unit(vector: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(vector))
    return vector / norm if norm > 0 else vector


def inner_scale(hull: Polytope, inner: Polytope, shift: np.ndarray) -> SideCertificate:
    """
    Smallest a' with shift + (1 - a')(w - shift) in the hull for all vertices w of inner.

    Ray shooting from the shift through each vertex of the inner body.
    """
    tol = geometry_tolerance()
    A, b = hull.A, hull.b
    room = b - A @ shift
    if np.any(room < -tol):
        return SideCertificate(math.inf, shift)
    worst, witness = 1.0, None
    for vertex in inner.vertices:
        ray = vertex - shift
        reach = A @ ray
        outward = reach > tol
        exit_at = float(np.min(np.maximum(room[outward], 0.0) / reach[outward])) if outward.any() else math.inf
        if exit_at < worst:
            worst, witness = exit_at, _unit(ray)
    alpha = max(0.0, 1.0 - worst)
    return SideCertificate(alpha if alpha > tol else 0.0, shift, witness)


def outer_scale(hull: Polytope, outer: Polytope, shift: np.ndarray) -> SideCertificate:
    """Smallest a' with every vertex s of the hull in shift + (1 + a')(outer - shift)."""
    tol = geometry_tolerance()
    A, b = outer.A, outer.b
    room = b - A @ shift
    if np.any(room <= tol):
        return SideCertificate(math.inf, shift)
    ratios = (hull.vertices - shift) @ A.T / room  # (vertices, facets)
    vertex, facet = np.unravel_index(int(np.argmax(ratios)), ratios.shape)
    alpha = max(0.0, float(ratios[vertex, facet]) - 1.0)
    return SideCertificate(alpha if alpha > tol else 0.0, shift, A[facet].copy())


def kernel_certify(
    points: np.ndarray,
    inner: Polytope,
    outer: Polytope,
    alpha: float,
) -> Certification:
    """
    Check (1 - a')(inner - c) within CH(S) - c within (1 + a')(outer - c).

    Shifts tried: the Chebyshev center and the vertex centroid of CH(S).
    The best a' per side is reported with the shift and a witness direction.

    Args:
        points: Kernel candidate S, (n, d).
        inner: Body the kernel should cover, typically D(kappa).
        outer: Body that should cover the kernel, typically D(kappa - Delta).
        alpha: Target a' for `passes`.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dim = points.shape[1]
    claimed_inner = 2.0 * alpha * math.sqrt(dim + 0.5)
    claimed_outer = alpha / (1.0 - alpha) * (1.0 + 4.0 * math.sqrt(dim + 0.5))
    if points.size == 0:
        empty = SideCertificate(math.inf)
        return Certification(empty, empty, alpha, claimed_inner, claimed_outer)

    hull = hull_of_points(points)
    shifts = {"chebyshev": chebyshev_center(hull)[0], "centroid": hull.centroid}
    inner_best = min((inner_scale(hull, inner, s) for s in shifts.values()), key=lambda c: c.alpha)
    outer_best = min((outer_scale(hull, outer, s) for s in shifts.values()), key=lambda c: c.alpha)
    certification = Certification(
        inner=inner_best,
        outer=outer_best,
        target=alpha,
        claimed_inner=claimed_inner,
        claimed_outer=claimed_outer,
        shifts={name: shift.tolist() for name, shift in shifts.items()},
    )
    if not certification.passes:
        logger.info(
            f"Kernel certification at a'={alpha} failed: inner {inner_best.alpha:.4f}, "
            f"outer {outer_best.alpha:.4f}"
        )
    return certification
