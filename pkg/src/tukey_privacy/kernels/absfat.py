"""
Grid kernel for absolutely fat regions.

The unit cube is cut into cells of side at most alpha/(c sqrt(d)); a cell
enters the kernel (as its center) when its largest depth, plus Laplace
noise, clears kappa minus a margin.
"""

import logging
import math

import numpy as np
from django.conf import settings

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain
from tukey_privacy.estimators.params import DPParams, as_chain
from tukey_privacy.geometry.measures import boxes_overlapping
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseSource

from .exceptions import CellBudgetOverflow
from .results import KernelResult

logger = logging.getLogger(__name__)


def cell_grid(cells_per_axis: int, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper corners of the cells_per_axis^d cells of [0,1]^d, C order."""
    index = np.indices((cells_per_axis,) * dim).reshape(dim, -1).T
    side = 1.0 / cells_per_axis
    return index * side, (index + 1) * side


def cell_depths(chain: RegionChain, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    """max over each cell of the depth: the largest k with D(k) meeting the cell."""
    depths = np.zeros(len(lows), dtype=int)
    alive = np.arange(len(lows))
    for kappa, region in enumerate(chain.regions, start=1):
        if not alive.size:
            break
        alive = alive[boxes_overlapping(region, lows[alive], highs[alive])]
        depths[alive] = kappa
    return depths


def absfat_constants(dim: int, params: DPParams, c: float) -> dict[str, float]:
    """Cell side, cell count and per-cell privacy parameters."""
    zeta = params.alpha / (c * math.sqrt(dim))
    per_axis = math.ceil(1.0 / zeta)
    cells = per_axis**dim
    epsilon0 = params.epsilon / (2.0 * math.sqrt(cells * math.log(1.0 / params.delta)))
    beta0 = params.beta / cells
    return {
        "zeta": zeta,
        "cells_per_axis": per_axis,
        "cells": cells,
        "epsilon0": epsilon0,
        "delta0": params.delta / (2 * cells),
        "beta0": beta0,
        "delta_kernel": 2.0 * math.log(1.0 / beta0) / epsilon0,
    }


def kernel_absfat(
    data: PointSet | RegionChain,
    kappa: int,
    params: DPParams,
    c: float,
    noise: NoiseSource | None = None,
) -> KernelResult:
    """
    (alpha, Delta)-kernel of a c-absolutely fat D(kappa), (epsilon, delta)-DP.

    The data must live in the unit cube. Every cell is one Laplace test at
    epsilon0 = epsilon / (2 sqrt(k ln(1/delta))); advanced composition over
    the k cells gives the stated budget. For every direction u the kernel
    satisfies max_{D(kappa)} <p,u> - alpha*width <= max_S <p,u>
    <= max_{D(kappa - Delta)} <p,u> + alpha*width, Delta = 2 ln(1/beta0)/epsilon0.

    Raises:
        ValidationError: If delta is not in (0, 1) or c < 1.
        CellBudgetOverflow: If the cell count exceeds TUKEY_CELL_CAP.
    """
    if not 0 < params.delta < 1:
        raise ValidationError(f"The grid kernel needs 0 < delta < 1, got {params.delta}", field="delta")
    if c < 1:
        raise ValidationError(f"Fatness constant must be >= 1, got {c}", field="c")
    chain = as_chain(data)
    source = params.source(noise)
    constants = absfat_constants(chain.dim, params, c)
    cells, cap = constants["cells"], settings.TUKEY_CELL_CAP
    if cells > cap:
        raise CellBudgetOverflow(
            f"{cells} cells exceed the cap of {cap}; raise alpha or lower c",
            cells=cells,
            cap=cap,
        )

    lows, highs = cell_grid(constants["cells_per_axis"], chain.dim)
    depths = cell_depths(chain, lows, highs)
    epsilon0, beta0 = constants["epsilon0"], constants["beta0"]
    threshold = kappa - source.margin(math.log(1.0 / beta0) / epsilon0)
    noisy = depths + source.laplace_array(1.0 / epsilon0, cells)
    passing = noisy >= threshold
    centers = 0.5 * (lows[passing] + highs[passing])

    budget = PrivacyBudget().charge("laplace_cell", epsilon0, constants["delta0"], count=cells)
    logger.info(f"Grid kernel at depth {kappa}: {len(centers)} of {cells} cells passed")
    return KernelResult(
        kappa=kappa,
        points=centers,
        alpha=params.alpha,
        gamma_kernel=constants["delta_kernel"],
        method="absfat",
        budget=budget,
        details={**constants, "advanced": budget.advanced_total(), "c": c},
    )
