"""
End-to-end private kernel pipeline.

Stages run strictly in order, each on its own noise stream:

    preprocess   noisy size check (epsilon) and a non-private rank check
    kappa        shifted exponential mechanism for a depth with stable volume
    width_probe  optional private width test of D(kappa + Delta^width)
    bbox         private bounding box and the fattening transform
    kernel       private kernel on the transformed chain, pulled back
    report       applied measures and the optional certification
"""

import logging
import math
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any

from django.db import models

from tukey_privacy.bbox.boxes import OrientedBox
from tukey_privacy.bbox.private import bbox_private
from tukey_privacy.bbox.transform import FatteningTransform, fattening_transform
from tukey_privacy.core.exceptions import TukeyPrivacyError, ValidationError
from tukey_privacy.core.validation import require_int_range, require_positive
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import RegionChain, region_chain
from tukey_privacy.estimators.params import DPParams
from tukey_privacy.estimators.width import dp_width, width_depth_loss
from tukey_privacy.kappa.exceptions import MTooSmall
from tukey_privacy.kappa.mechanism import minimum_m, shifted_exp_mechanism
from tukey_privacy.kernels.absfat import absfat_constants, kernel_absfat
from tukey_privacy.kernels.certify import Certification, kernel_certify
from tukey_privacy.kernels.fat import fat_constants, kernel_fat
from tukey_privacy.kernels.fatness import FatnessSpec, absolute_fatness_constant
from tukey_privacy.kernels.results import KernelResult
from tukey_privacy.privacy.budget import PrivacyBudget
from tukey_privacy.privacy.noise import NoiseMode, NoiseSource, sample_laplace

from ..exceptions import AbortTooSmall, StageError
from .measures import AppliedMeasures, applied_measures

logger = logging.getLogger(__name__)

STAGES = ("preprocess", "kappa", "width_probe", "bbox", "kernel", "report")

# Accepted range of the grid exponent
MIN_GRID_EXPONENT = 4
MAX_GRID_EXPONENT = 32


class KernelMethod(models.TextChoices):
    ABSFAT = "absfat", "Grid kernel (absolutely fat regions)"
    FAT = "fat", "Cover kernel (relatively fat regions)"


@dataclass
class RunConfig:
    """
    Options of one run, validated eagerly.

    Each private stage receives the full (epsilon, delta); callers wanting a
    global budget divide it upfront.

    Usage:
        config = RunConfig(epsilon=0.9, delta=1e-6, alpha=0.2, m=20, c=4.0)
        report = run_pipeline(points, config)
    """

    epsilon: float = 1.0
    delta: float = 1e-6
    alpha: float = 0.1
    beta: float = 0.05
    dim: int | None = None
    grid_exponent: int = 10
    seed: int | None = None  # None runs with noise disabled
    record_seed: bool = True  # False keeps a fresh seed out of reports
    kappa: int | None = None
    c: float | None = None  # fatness constant; defaults per kernel method
    m: int | None = None  # overrides the prescribed m
    upper: float | None = None  # diameter upper bound D
    lower: float | None = None  # width lower bound B
    method: str = KernelMethod.ABSFAT
    width_probe: bool = False
    certify: bool = False  # non-private diagnostic
    clamped: bool = True
    input_path: Path | None = None
    output_path: Path | None = None
    svg_path: Path | None = None

    def __post_init__(self):
        require_int_range("grid_exponent", self.grid_exponent, MIN_GRID_EXPONENT, MAX_GRID_EXPONENT)
        if self.dim is not None:
            require_int_range("dim", self.dim, 1, 3)
        if self.method not in KernelMethod.values:
            raise ValidationError(
                f"method must be one of {KernelMethod.values}, got {self.method!r}", field="method"
            )
        if self.c is not None and self.c < 1:
            raise ValidationError(f"c must be >= 1, got {self.c}", field="c")
        if self.m is not None:
            require_int_range("m", self.m, 1)
        for name in ("upper", "lower"):
            if getattr(self, name) is not None:
                require_positive(name, getattr(self, name))
        self.params()

    @property
    def mode(self) -> NoiseMode:
        return NoiseMode.seeded(self.seed) if self.seed is not None else NoiseMode.disabled()

    def params(self, **overrides) -> DPParams:
        """DPParams for a stage; raises ValidationError on bad ranges."""
        params = DPParams(
            epsilon=self.epsilon,
            delta=self.delta,
            alpha=self.alpha,
            beta=self.beta,
            kappa=self.kappa or 1,
            mode=self.mode,
        )
        return replace(params, **overrides) if overrides else params

    def fatness_constant(self, dim: int) -> float:
        """Configured c, or 2d 5^d d! for the grid kernel (its relative form for the cover kernel)."""
        if self.c is not None:
            return self.c
        absolute = FatnessSpec.absolute(absolute_fatness_constant(dim))
        if self.method == KernelMethod.FAT:
            return absolute.as_relative(dim).c
        return absolute.c

    def to_dict(self) -> dict[str, Any]:
        values = asdict(self)
        for name in ("input_path", "output_path", "svg_path"):
            values[name] = None if values[name] is None else str(values[name])
        values["method"] = str(self.method)
        values["mode"] = self.mode.describe()
        if not self.record_seed:
            values["seed"] = None
            values["mode"] = "seeded(fresh)"
        return values


@dataclass
class PipelineReport:
    """Everything a run releases, plus the non-private checks it logged."""

    config: RunConfig
    n: int
    dim: int
    chosen_kappa: int
    sampled_kappa: int  # raw mechanism output before clamping to [1, m]
    m: int
    m_prescribed: int
    kernel: KernelResult
    measures: AppliedMeasures
    budget: PrivacyBudget
    constants: dict[str, Any] = field(default_factory=dict)
    checks: dict[str, Any] = field(default_factory=dict)
    box: OrientedBox | None = None
    transform: FatteningTransform | None = None
    width_probe: dict[str, Any] | None = None
    certification: Certification | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def total(self) -> tuple[float, float]:
        """Basic-composition total (epsilon, delta) over all stages."""
        return self.budget.epsilon_spent, self.budget.delta_spent

    @property
    def stage_totals(self) -> dict[str, tuple[float, float]]:
        return self.budget.by_stage()


def prescribed_m(dim: int, grid_exponent: int, delta_kernel: float) -> int:
    """m = 4 ceil(d^3 u + d^3 log2 d) Delta^kernel, rounded up."""
    cube = dim**3
    return math.ceil(4 * math.ceil(cube * grid_exponent + cube * math.log2(dim)) * delta_kernel)


def kernel_depth_loss(chain: RegionChain, params: DPParams, method: str, c: float) -> float:
    """Delta^kernel of the configured kernel method (on the input domain)."""
    if method == KernelMethod.FAT:
        return fat_constants(chain, params, c)["gamma_kernel"]
    return absfat_constants(chain.dim, params, c)["delta_kernel"]


@contextmanager
def pipeline_stage(name: str, timings: dict[str, float]) -> Iterator[None]:
    """
    Time a stage and tag library failures with its name.

    Validation errors and aborts pass through unchanged.
    """
    logger.info(f"Stage {name} started")
    started = time.perf_counter()
    try:
        yield
    except (ValidationError, AbortTooSmall):
        raise
    except TukeyPrivacyError as exc:
        raise StageError(f"Stage {name} failed: {exc}", stage=name) from exc
    finally:
        timings[name] = time.perf_counter() - started
    logger.info(f"Stage {name} finished in {timings[name]:.3f}s")


def _preprocess(
    points: PointSet,
    chain: RegionChain,
    m: int,
    params: DPParams,
    noise: NoiseSource,
    budget: PrivacyBudget,
) -> tuple[int, dict[str, Any]]:
    """
    Noisy size check, then the non-private rank check and the m cap.

    Raises:
        AbortTooSmall: If the noisy size is below 2(d+1)m.
        MTooSmall: If capping m at the deepest region drops it below 16/epsilon.
    """
    dim = points.dim
    noisy_count = points.n + sample_laplace(1.0 / params.epsilon, noise)
    budget.charge("noisy_count", params.epsilon, stage="preprocess")
    required = 2 * (dim + 1) * m
    if noisy_count < required:
        raise AbortTooSmall(
            f"Noisy size {noisy_count:.1f} is below 2(d+1)m = {required}",
            noisy_count=noisy_count,
            required=required,
        )

    probe = chain.region(min(m, chain.kappa_max))
    rank = probe.affine_rank if probe is not None else -1
    logger.warning(
        f"NOT PRIVATE: rank check of D({min(m, chain.kappa_max)}) found affine rank {rank} "
        f"in dimension {dim}"
    )
    checks = {"noisy_count": noisy_count, "required": required, "rank": rank, "degenerate": rank < dim}
    if rank < dim:
        logger.warning(f"D({min(m, chain.kappa_max)}) is degenerate; later stages may fail")
    if m > chain.kappa_max:
        logger.warning(f"m = {m} exceeds the deepest region {chain.kappa_max}; capping")
        m = chain.kappa_max
        checks["m_capped"] = True
        if m < minimum_m(params.epsilon):
            raise MTooSmall(
                f"m capped at the deepest region {m} is below 16/epsilon = {16.0 / params.epsilon:.1f}",
                m=m,
                minimum=16.0 / params.epsilon,
            )
    return m, checks


def run_pipeline(points: PointSet, config: RunConfig) -> PipelineReport:
    """
    Private (alpha, Delta)-kernel of a depth chosen for stable volume.

    Returns:
        PipelineReport with the chosen kappa, the kernel in input
        coordinates, the box and transform, the ledger tagged by stage,
        and measures of CH(S).

    Raises:
        ValidationError: On bad parameters, including MTooSmall.
        AbortTooSmall: If the noisy size check fails.
        StageError: If a stage raises any other library error.
    """
    params = config.params()
    if not 0 < params.delta < 1:
        raise ValidationError(f"The pipeline needs 0 < delta < 1, got {params.delta}", field="delta")
    if config.dim is not None and config.dim != points.dim:
        raise ValidationError(f"Expected dimension {config.dim}, got {points.dim}", field="dim")
    dim, method = points.dim, config.method
    c = config.fatness_constant(dim)
    timings: dict[str, float] = {}
    budget = PrivacyBudget()
    streams = dict(zip(STAGES, params.source().spawn(len(STAGES))))
    chain = region_chain(points)

    delta_kernel = kernel_depth_loss(chain, params, method, c)
    m_prescribed = prescribed_m(dim, points.grid_exponent, delta_kernel)
    m = config.m if config.m is not None else m_prescribed
    if m < minimum_m(params.epsilon):
        raise MTooSmall(
            f"m = {m} is below 16/epsilon = {16.0 / params.epsilon:.1f}", m=m, minimum=16.0 / params.epsilon
        )
    logger.info(f"Pipeline on n={points.n}, d={dim}: m = {m} (prescribed {m_prescribed}), c = {c:g}")

    with pipeline_stage("preprocess", timings):
        m, checks = _preprocess(points, chain, m, params, streams["preprocess"], budget)

    with pipeline_stage("kappa", timings):
        selection = shifted_exp_mechanism(chain, m, params, streams["kappa"])
        budget.extend(selection.budget, stage="kappa")
        sampled = int(selection.value)
        kappa = min(max(sampled, 1), m)
        if kappa != sampled:
            logger.warning(f"Selected kappa {sampled} lies outside [1, {m}]; clamped to {kappa}")
        logger.info(f"Chosen kappa = {kappa}")

    probe_result = None
    kernel_chain, transform, box = chain, None, None
    if config.width_probe:
        with pipeline_stage("width_probe", timings):
            lower = 1.0 / c if method == KernelMethod.ABSFAT else 1.0 / absolute_fatness_constant(dim)
            upper = config.upper or chain.diameter_bound
            delta_width = width_depth_loss(upper, lower, params)
            probe_kappa = kappa + math.ceil(params.offset(delta_width))
            probe = dp_width(chain, probe_kappa, params, upper=upper, lower=lower, noise=streams["width_probe"])
            budget.extend(probe.budget, stage="width_probe")
            passed = probe.value >= lower
            probe_result = {"kappa": probe_kappa, "width": probe.value, "threshold": lower, "passed": passed}
            logger.info(f"Width probe at depth {probe_kappa}: {probe.value:.4g} ({'passed' if passed else 'failed'})")
        if passed and method == KernelMethod.FAT:
            c = FatnessSpec.absolute(1.0 / lower).as_relative(dim).c

    if not (probe_result and probe_result["passed"]):
        with pipeline_stage("bbox", timings):
            box_report = bbox_private(chain, kappa, params, streams["bbox"])
            budget.extend(box_report.budget, stage="bbox")
            box = box_report.value
            transform = fattening_transform(box, clamped=config.clamped)
            kernel_chain = transform.apply_chain(chain)

    with pipeline_stage("kernel", timings):
        if method == KernelMethod.FAT:
            kernel = kernel_fat(kernel_chain, kappa, params, c, streams["kernel"])
        else:
            kernel = kernel_absfat(kernel_chain, kappa, params, c, streams["kernel"])
        # Advanced-composition aggregate of the per-call ledger
        kernel_epsilon, kernel_delta = kernel.details["advanced"]
        budget.charge(f"kernel_{method}", kernel_epsilon, kernel_delta, stage="kernel")
        if transform is not None:
            kernel = kernel.pulled_back(transform.inverse)

    certification = None
    with pipeline_stage("report", timings):
        if config.certify:
            certification = certify_kernel(chain, kernel, params)
            kernel.certification = certification
        measures = applied_measures(kernel)

    logger.info(
        f"Pipeline released {len(kernel.points)} kernel points at depth {kappa}; "
        f"total budget ({budget.epsilon_spent:.4g}, {budget.delta_spent:.3g})"
    )
    return PipelineReport(
        config=config,
        n=points.n,
        dim=dim,
        chosen_kappa=kappa,
        sampled_kappa=sampled,
        m=m,
        m_prescribed=m_prescribed,
        kernel=kernel,
        measures=measures,
        budget=budget,
        constants={
            "c": c,
            "delta_kernel": delta_kernel,
            "gamma_kernel": kernel.gamma_kernel,
            "utility_loss": selection.delta_depth,
            "delta_bb": box_report.delta_depth if box is not None else None,
        },
        checks=checks,
        box=box,
        transform=transform,
        width_probe=probe_result,
        certification=certification,
        timings=timings,
    )


def certify_kernel(chain: RegionChain, kernel: KernelResult, params: DPParams) -> Certification:
    """Exact sandwich check against D(kappa) and D(kappa - Gamma); not private."""
    logger.warning("NOT PRIVATE: certifying the kernel against exact Tukey regions")
    outer_kappa = max(1, kernel.kappa - math.ceil(params.offset(kernel.gamma_kernel)))
    return kernel_certify(kernel.points, chain.require(kernel.kappa), chain.require(outer_kappa), kernel.alpha)
