"""Two-dimensional SVG scenes of points, regions, kernels and boxes."""

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from django.template.loader import render_to_string

from tukey_privacy.bbox.boxes import OrientedBox
from tukey_privacy.depth.points import PointSet
from tukey_privacy.depth.regions import region_chain
from tukey_privacy.geometry.exceptions import UnsupportedDimension
from tukey_privacy.geometry.polytope import Polytope, hull_of_points

from .pipeline import PipelineReport

logger = logging.getLogger(__name__)

SIZE = 480
MARGIN = 20

# (fill, stroke) per shape kind
PALETTE = {
    "region": ("#3b78b3", "#1f4e79"),
    "outer": ("#9fc5e8", "#6fa8dc"),
    "kernel": ("#e06666", "#c0392b"),
    "box": ("none", "#6aa84f"),
}


@dataclass
class SceneShape:
    name: str
    kind: str  # a PALETTE key
    vertices: np.ndarray  # (k, 2) in data coordinates, any order


@dataclass
class Scene:
    """Everything drawn in one picture, in data coordinates."""

    title: str
    points: np.ndarray
    shapes: list[SceneShape] = field(default_factory=list)
    kernel: np.ndarray | None = None

    def add_polytope(self, name: str, kind: str, polytope: Polytope | None) -> "Scene":
        if polytope is not None:
            self.shapes.append(SceneShape(name, kind, polytope.vertices))
        return self

    def add_box(self, box: OrientedBox | None) -> "Scene":
        if box is not None:
            self.shapes.append(SceneShape("box", "box", box.corners()))
        return self


def _to_pixels(points: np.ndarray) -> np.ndarray:
    """[0,1]^2 onto the drawing area, y pointing up."""
    extent = SIZE - 2 * MARGIN
    points = np.atleast_2d(np.asarray(points, dtype=float))
    return np.column_stack([MARGIN + extent * points[:, 0], SIZE - MARGIN - extent * points[:, 1]])


def _ordered(vertices: np.ndarray) -> np.ndarray:
    """Counter-clockwise around the centroid."""
    center = vertices.mean(axis=0)
    angles = np.arctan2(vertices[:, 1] - center[1], vertices[:, 0] - center[0])
    return vertices[np.argsort(angles, kind="stable")]


def scene_context(scene: Scene) -> dict:
    shapes = []
    for shape in scene.shapes:
        fill, stroke = PALETTE[shape.kind]
        shapes.append(
            {
                "name": shape.name,
                "kind": shape.kind,
                "vertices": _to_pixels(_ordered(np.asarray(shape.vertices, dtype=float))).tolist(),
                "fill": fill,
                "stroke": stroke,
            }
        )
    kernel = scene.kernel if scene.kernel is not None and len(scene.kernel) else np.zeros((0, 2))
    return {
        "title": scene.title,
        "size": SIZE,
        "margin": MARGIN,
        "extent": SIZE - 2 * MARGIN,
        "shapes": shapes,
        "points": _to_pixels(scene.points).tolist(),
        "kernel": _to_pixels(kernel).tolist() if len(kernel) else [],
    }


def render_svg(scene: Scene, path: str | Path | None = None) -> str:
    """
    Render a d=2 scene with the pipeline/scene.svg template.

    Raises:
        UnsupportedDimension: For scenes that are not planar.
        OSError: If the file cannot be written.
    """
    dim = np.atleast_2d(scene.points).shape[1]
    if dim != 2:
        raise UnsupportedDimension(f"SVG scenes are only drawn for d=2, got d={dim}", dim=dim)
    text = render_to_string("pipeline/scene.svg", scene_context(scene))
    if path is not None:
        Path(path).write_text(text)
        logger.info(f"Wrote SVG scene to {path}")
    return text


def pipeline_scene(points: PointSet, report: PipelineReport) -> Scene:
    """P, D(kappa), D(kappa - Gamma), CH(S) and the box of a pipeline run."""
    chain = region_chain(points)
    kappa = report.chosen_kappa
    outer_kappa = max(1, kappa - math.ceil(report.config.params().offset(report.kernel.gamma_kernel)))
    scene = Scene(title=f"Private kernel at depth {kappa}", points=points.points, kernel=report.kernel.points)
    if outer_kappa != kappa:
        scene.add_polytope(f"D({outer_kappa})", "outer", chain.region(outer_kappa))
    scene.add_polytope(f"D({kappa})", "region", chain.region(kappa))
    if len(report.kernel.points):
        scene.add_polytope("CH(S)", "kernel", hull_of_points(report.kernel.points))
    return scene.add_box(report.box)
