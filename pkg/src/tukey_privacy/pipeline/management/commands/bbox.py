import logging

from tukey_privacy.bbox.nonprivate import bbox_nonprivate
from tukey_privacy.bbox.private import bbox_private
from tukey_privacy.bbox.transform import fattening_transform
from tukey_privacy.depth.regions import region_chain
from tukey_privacy.pipeline.services.rendering import Scene
from tukey_privacy.privacy.budget import PrivacyBudget

from ._base import CommandOutcome, TukeyCommand

logger = logging.getLogger(__name__)


class Command(TukeyCommand):
    help = "Private bounding box of D(kappa) and the transform onto the unit cube"
    command_name = "bbox"
    draws_svg = True

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--nonprivate", action="store_true", help="Exact-data box of the convex hull (not private)"
        )
        parser.add_argument("--gamma", type=float, default=1.0, help="Segment factor of the non-private box")
        parser.add_argument("--unclamped", action="store_true", help="Do not clip transformed regions to the cube")

    def execute_command(self, points, config, options):
        params = config.params()
        kappa = params.kappa
        if options["nonprivate"]:
            logger.warning("NOT PRIVATE: bounding box of the raw convex hull")
            box, budget, details = bbox_nonprivate(points, options["gamma"]), PrivacyBudget(), {}
        else:
            report = bbox_private(points, kappa, params)
            box, budget = report.value, report.budget
            details = {
                key: value for key, value in report.details.items() if key not in ("levels",)
            }
        transform = None if box.degenerate else fattening_transform(box, clamped=not options["unclamped"])
        scene = Scene(title=f"Box of D({kappa})", points=points.points)
        scene.add_polytope(f"D({kappa})", "region", region_chain(points).region(kappa)).add_box(box)
        return CommandOutcome(
            result={"kappa": kappa, "box": box, "transform": transform, "details": details},
            budget=budget,
            scene=scene,
        )
