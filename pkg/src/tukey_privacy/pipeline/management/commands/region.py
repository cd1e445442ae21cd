import logging

from tukey_privacy.depth.regions import region_chain
from tukey_privacy.pipeline.services.measures import measures_of_polytope
from tukey_privacy.pipeline.services.rendering import Scene

from ._base import CommandOutcome, TukeyCommand

logger = logging.getLogger(__name__)


class Command(TukeyCommand):
    help = "Exact Tukey region D(kappa) and its measures (not private)"
    command_name = "region"
    draws_svg = True

    def execute_command(self, points, config, options):
        kappa = config.kappa or 1
        chain = region_chain(points)
        region = chain.require(kappa)
        logger.warning(f"NOT PRIVATE: D({kappa}) is computed exactly from the raw data")
        result = {
            "kappa": kappa,
            "kappa_max": chain.kappa_max,
            "affine_rank": region.affine_rank,
            "vertices": region.vertices,
            "measures": measures_of_polytope(region) if points.dim <= 3 else None,
        }
        scene = Scene(title=f"D({kappa})", points=points.points).add_polytope(f"D({kappa})", "region", region)
        return CommandOutcome(result=result, scene=scene)
