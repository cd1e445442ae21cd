"""
Versioned JSON reports.

Every command emits the same envelope (schema version, command, config,
input summary, result, budget). Payloads are validated against the bundled
JSON schema and serialized with sorted keys, so a fixed seed and config
give byte-identical files. Timings are left out unless asked for.
"""

import json
import logging
import math
from dataclasses import is_dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

import jsonschema
import numpy as np
from django.conf import settings

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.kernels.results import KernelResult
from tukey_privacy.privacy.budget import PrivacyBudget

from .pipeline import PipelineReport, RunConfig

logger = logging.getLogger(__name__)

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schemas" / "report.schema.json"


@lru_cache(maxsize=1)
def report_schema() -> dict:
    return json.loads(SCHEMA_PATH.read_text())


def jsonable(value: Any) -> Any:
    """Plain JSON values: arrays to lists, numpy scalars to Python, non-finite floats to None."""
    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.generic):
        return jsonable(value.item())
    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, Path):
        return str(value)
    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())
    if is_dataclass(value):
        raise TypeError(f"{type(value).__name__} has no to_dict()")
    return value


def budget_section(budget: PrivacyBudget) -> dict[str, Any]:
    section = budget.to_dict()
    section["stages"] = {
        stage or "unstaged": {"epsilon": eps, "delta": delta} for stage, (eps, delta) in budget.by_stage().items()
    }
    return section


def kernel_section(kernel: KernelResult) -> dict[str, Any]:
    details = {key: value for key, value in kernel.details.items() if key not in ("depths", "headroom")}
    return {
        "kappa": kernel.kappa,
        "method": kernel.method,
        "alpha": kernel.alpha,
        "gamma_kernel": kernel.gamma_kernel,
        "points": kernel.points,
        "base": kernel.base,
        "details": details,
        "certification": kernel.certification,
    }


def pipeline_result(report: PipelineReport) -> dict[str, Any]:
    return {
        "chosen_kappa": report.chosen_kappa,
        "sampled_kappa": report.sampled_kappa,
        "m": report.m,
        "m_prescribed": report.m_prescribed,
        "kernel": kernel_section(report.kernel),
        "measures": report.measures,
        "box": report.box,
        "transform": report.transform,
        "width_probe": report.width_probe,
        "constants": report.constants,
        "checks": report.checks,
    }


def build_report(
    command: str,
    result: dict[str, Any],
    config: RunConfig | None = None,
    points: PointSet | None = None,
    budget: PrivacyBudget | None = None,
    timings: dict[str, float] | None = None,
) -> dict[str, Any]:
    """
    The report envelope as plain JSON values.

    Raises:
        ValidationError: If the payload does not match the bundled schema.
    """
    payload = {
        "schema_version": settings.TUKEY_REPORT_SCHEMA_VERSION,
        "command": command,
        "config": config.to_dict() if config is not None else {},
        "input": (
            {"n": points.n, "dim": points.dim, "grid_exponent": points.grid_exponent}
            if points is not None
            else None
        ),
        "result": result,
        "budget": budget_section(budget or PrivacyBudget()),
    }
    if timings is not None:
        payload["timings"] = timings
    payload = jsonable(payload)
    validate_report(payload)
    return payload


def validate_report(payload: dict[str, Any]) -> None:
    try:
        jsonschema.validate(instance=payload, schema=report_schema())
    except jsonschema.ValidationError as exc:
        raise ValidationError(f"Report does not match schema: {exc.message}", field="report") from exc


def render_report(payload: dict[str, Any]) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def emit_report(payload: dict[str, Any], path: str | Path | None = None) -> str:
    """
    Serialize a report and write it when a path is given.

    Raises:
        OSError: If the file cannot be written.
    """
    text = render_report(payload)
    if path is not None:
        Path(path).write_text(text)
        logger.info(f"Wrote {payload['command']} report to {path}")
    return text
