"""
Private bounding box of D(kappa).

Level by level (dimension j = d down to 2) the chain yields a private
interior point s, a private diameter l, a cover direction v along which
some deep point sits 0.45 l beyond s, and a completion t of that slice.
The box side along u = (t - s)/|t - s| is <s, u> +- (10/9) l, after which
every region is projected orthogonally to u. Dimension 1 closes with a
point and a diameter. All k = d^2 + 2d - 1 private calls run at epsilon/k.
"""

import logging
import math

import numpy as np

from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.diameter import dp_diameter
from tukey_privacy.estimators.params import DPParams, EstimateReport, as_chain
from tukey_privacy.estimators.point import complete_point
from tukey_privacy.estimators.projection import dp_large_tdc_direction
from tukey_privacy.geometry.directions import angle_cover, cover_size, orthogonal_complement, rotate_to_axis
from tukey_privacy.geometry.polytope import geometry_tolerance
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource
from tukey_privacy.privacy.quasi_concave import qc_alpha
from tukey_privacy.privacy.svt import svt_depth_loss

from .boxes import OrientedBox
from .exceptions import BoxSearchFailed

logger = logging.getLogger(__name__)

# A cover direction keeps this fraction of any projection
COVER_COSINE = 0.9
# Diameter accuracy: l >= 0.9 diam
DIAMETER_ALPHA = 0.1
# Offset of the completion slice, as a fraction of l
REACH = 0.45
# Half-length of a box side, as a multiple of l
HALF_SIDE = 10.0 / 9.0


def bbox_invocations(dim: int) -> int:
    return dim * dim + 2 * dim - 1


def bbox_constants(chain: RegionChain, params: DPParams) -> dict[str, float]:
    """
    Per-call parameters and the three summands of Delta^BB.

    Depth losses are taken at the top level (largest cover, widest grid);
    projected levels can only do better.
    """
    dim = chain.dim
    k = bbox_invocations(dim)
    epsilon0, beta0 = params.epsilon / k, params.beta / k
    diameter_steps = math.ceil((2 * chain.grid_exponent + math.log(dim)) / DIAMETER_ALPHA)
    directions = cover_size(math.acos(COVER_COSINE), dim)
    grid_size = int(math.ceil(chain.diameter_bound / chain.grid_step)) + 1
    delta_diam = svt_depth_loss(diameter_steps + 2, beta0, epsilon0)
    delta_direction = svt_depth_loss(directions + 1, beta0, epsilon0)
    alpha_qc = qc_alpha(grid_size, epsilon0, beta0)
    return {
        "invocations": k,
        "epsilon0": epsilon0,
        "delta0": params.delta / k,
        "beta0": beta0,
        "delta_diam": delta_diam,
        "delta_direction": delta_direction,
        "alpha_qc": alpha_qc,
        "delta_bb": delta_diam + delta_direction + dim * alpha_qc,
    }


def bbox_private(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    noise: NoiseSource | None = None,
) -> EstimateReport:
    """
    Box containing D(kappa) with volume at most 5^d d! vol(D(kappa - Delta^BB)).

    (epsilon, delta)-DP by basic composition over d^2 + 2d - 1 calls.
    A level whose points s and t (nearly) coincide falls back to the first
    axis of the current frame and is flagged in details["degenerate_levels"].

    Returns:
        EstimateReport whose value is an OrientedBox in the source
        coordinates of the chain, with Delta^BB and its summands in details.

    Raises:
        EmptyRegion: If D(kappa) is empty.
        BoxSearchFailed: If no cover direction passes the direction search.
    """
    chain = as_chain(data)
    chain.require(kappa)
    source = params.source(noise)
    dim = chain.dim
    constants = bbox_constants(chain, params)
    epsilon0, beta0 = constants["epsilon0"], constants["beta0"]
    step = DPParams(
        epsilon=epsilon0,
        delta=constants["delta0"],
        alpha=DIAMETER_ALPHA,
        beta=beta0,
        kappa=kappa,
        mode=params.mode,
    )
    if chain.kappa_max < kappa + params.offset(dim * constants["alpha_qc"]):
        logger.warning(
            f"D({kappa + dim * constants['alpha_qc']:.1f}) is empty; interior points may miss D({kappa})"
        )
    shallow = max(1, math.floor(kappa - params.offset(constants["delta_diam"])))
    zeta = math.acos(COVER_COSINE)
    tol = geometry_tolerance()
    budget = PrivacyBudget()
    axes, intervals, levels, degenerate = [], [], [], []

    for level in range(dim, 1, -1):
        s, s_depth = complete_point(chain, (), epsilon0, beta0, source, budget)
        diameter = dp_diameter(chain, kappa, step, source)
        budget.extend(diameter.budget)
        ell = diameter.value

        search = dp_large_tdc_direction(
            chain, shallow, step, angle_cover(zeta, level).directions, s, REACH * ell, source
        )
        budget.extend(search.budget)
        if search.value is None:
            raise BoxSearchFailed(
                f"No cover direction admits depth {shallow} at offset {REACH * ell:.4g} "
                f"in dimension {level}",
                level=level,
            )
        rotation = rotate_to_axis(search.value)
        completed, t_depth = complete_point(
            chain.rotated(rotation), (float(rotation[0] @ s) + REACH * ell,), epsilon0, beta0, source, budget
        )
        t = rotation.T @ completed

        gap = float(np.linalg.norm(t - s))
        if gap <= tol or ell <= tol:
            u = np.eye(level)[0]
            degenerate.append(level)
            logger.warning(f"Degenerate slice at dimension {level} (|t - s| = {gap:.3g}, l = {ell:.3g})")
        else:
            u = (t - s) / gap
        center = float(s @ u)
        axes.append(chain.frame.T @ u)
        shift = float(chain.offset @ u)
        intervals.append((center - HALF_SIDE * ell - shift, center + HALF_SIDE * ell - shift))
        levels.append({"dim": level, "s": s.tolist(), "t": t.tolist(), "ell": ell, "depths": [s_depth, t_depth]})
        chain = chain.projected(orthogonal_complement(u))

    s, s_depth = complete_point(chain, (), epsilon0, beta0, source, budget)
    diameter = dp_diameter(chain, kappa, step, source)
    budget.extend(diameter.budget)
    ell = diameter.value
    if ell <= tol:
        degenerate.append(1)
    axes.append(chain.frame[0])
    shift = float(chain.offset[0])
    intervals.append((float(s[0]) - HALF_SIDE * ell - shift, float(s[0]) + HALF_SIDE * ell - shift))
    levels.append({"dim": 1, "s": s.tolist(), "ell": ell, "depths": [s_depth]})

    box = OrientedBox(np.array(axes), np.array(intervals), degenerate=bool(degenerate))
    logger.info(
        f"Private bounding box at depth {kappa}: volume {box.volume:.6g}, "
        f"{budget.invocations} private calls"
    )
    return EstimateReport(
        value=box,
        delta_depth=constants["delta_bb"],
        budget=budget,
        details={**constants, "levels": levels, "degenerate_levels": degenerate},
    )
