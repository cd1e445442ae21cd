"""Direction-cover kernel for relatively fat regions."""

import logging
import math
from dataclasses import replace

import numpy as np

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.params import DPParams, as_chain
from tukey_privacy.estimators.point import chain_qc_alpha, complete_point, dp_point_in_region
from tukey_privacy.estimators.projection import dp_max_projection, max_projection_steps
from tukey_privacy.geometry.directions import angle_cover, cover_size, rotate_to_axis
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.svt import svt_depth_loss

from .results import KernelResult

logger = logging.getLogger(__name__)


def cover_scaling(alpha: float) -> tuple[float, float]:
    """
    Accuracy of each headroom estimate and the factor it is pulled back by.

    The estimate is taken at accuracy alpha/2 and shrunk by 1 - alpha/2, so the
    overall factor (1 - alpha/2)^2 stays above 1 - alpha while the completed
    slice sits strictly inside the region.
    """
    return alpha / 2, 1.0 - alpha / 2


def fat_constants(chain: RegionChain, params: DPParams, c: float) -> dict[str, float]:
    """Cover angle, invocation count, per-invocation parameters and Gamma."""
    dim = chain.dim
    zeta = min(params.alpha / (2.0 * math.sqrt(2.0) * c), 0.5)
    invocations = dim * (cover_size(zeta, dim) + 1)
    epsilon0 = params.epsilon / (2.0 * math.sqrt(invocations * math.log(2.0 / params.delta)))
    beta0 = params.beta / invocations
    steps = max_projection_steps(chain.grid_exponent, chain.diameter_bound, cover_scaling(params.alpha)[0])
    alpha_qc = chain_qc_alpha(chain, epsilon0, beta0)
    return {
        "zeta": zeta,
        "invocations": invocations,
        "epsilon0": epsilon0,
        "delta0": params.delta / (2 * invocations),
        "beta0": beta0,
        "alpha_qc": alpha_qc,
        "gamma_kernel": svt_depth_loss(steps + 2, beta0, epsilon0) + (dim - 1) * alpha_qc,
    }


def kernel_fat(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    c: float,
    noise: NoiseSource | None = None,
) -> KernelResult:
    """
    (alpha, Gamma)-kernel of a (c, Gamma)-fat D(kappa), (epsilon, delta)-DP.

    Finds an inner point c0, then for each direction v of a cover of angle
    min(alpha/(2 sqrt(2) c), 1/2) measures the private headroom l_v of
    D(kappa) beyond c0 along v and completes a point q_v on the slice
    <x, v> = <c0, v> + (1 - alpha/2) l_v. The headroom is taken at accuracy
    alpha/2 and pulled back by the same factor, so the completed slice keeps
    a positive length while the overall factor stays above 1 - alpha.

    All k = d(|V| + 1) private calls run at (epsilon0, delta0) with
    epsilon0 = epsilon / (2 sqrt(k ln(2/delta))), delta0 = delta/(2k).

    Raises:
        ValidationError: If delta is not in (0, 1) or c < 1.
        EmptyRegion: If D(kappa) is empty.
    """
    if not 0 < params.delta < 1:
        raise ValidationError(f"The cover kernel needs 0 < delta < 1, got {params.delta}", field="delta")
    if c < 1:
        raise ValidationError(f"Fatness constant must be >= 1, got {c}", field="c")
    chain = as_chain(data)
    source = params.source(noise)
    dim = chain.dim
    constants = fat_constants(chain, params, c)
    epsilon0, beta0 = constants["epsilon0"], constants["beta0"]
    step = replace(params, epsilon=epsilon0, delta=constants["delta0"], beta=beta0)
    raw = PrivacyBudget()

    inner = dp_point_in_region(chain, kappa, replace(step, epsilon=dim * epsilon0, beta=dim * beta0), source)
    raw.extend(inner.budget)
    base = inner.value

    cover = angle_cover(constants["zeta"], dim)
    points, depths, headroom = [base], [inner.details["depth"]], []
    projection_alpha, pullback = cover_scaling(params.alpha)
    for direction in cover.directions:
        projection = dp_max_projection(
            chain, kappa, replace(step, alpha=projection_alpha), direction, base, noise=source
        )
        raw.extend(projection.budget)
        reach = pullback * projection.value
        rotation = rotate_to_axis(direction)
        rotated = chain.rotated(rotation)
        completed, depth = complete_point(
            rotated, (float(rotation[0] @ base) + reach,), epsilon0, beta0, source, raw
        )
        points.append(rotation.T @ completed)
        depths.append(depth)
        headroom.append(reach)

    budget = raw.with_slack(constants["delta0"])
    logger.info(
        f"Cover kernel at depth {kappa}: {len(points)} points from {len(cover)} directions, "
        f"{budget.invocations} private calls"
    )
    return KernelResult(
        kappa=kappa,
        points=np.array(points),
        alpha=params.alpha,
        gamma_kernel=constants["gamma_kernel"],
        method="fat",
        base=base,
        budget=budget,
        details={
            **constants,
            "c": c,
            "projection_alpha": projection_alpha,
            "pullback": pullback,
            "advanced": budget.advanced_total(),
            "depths": depths,
            "headroom": headroom,
        },
    )
