from tukey_privacy.pipeline.generators import PointGeneratorRegistry, generate_synthetic
from tukey_privacy.pipeline.loaders import dump_points

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Generate a synthetic grid-aligned point set"
    command_name = "gen"
    uses_input = False

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--family",
            choices=sorted(PointGeneratorRegistry.get_all_generators()),
            default="uniform",
        )
        parser.add_argument("--n", type=int, default=100, help="Number of points")
        parser.add_argument("--points", type=str, default=None, help="Write the points to this CSV/JSON file")

    def execute_command(self, points, config, options):
        seed = options["seed"] if options["seed"] is not None else 0
        generated = generate_synthetic(
            options["family"], options["n"], config.dim or 2, seed, config.grid_exponent
        )
        if options["points"]:
            dump_points(generated.points, options["points"])
        return CommandOutcome(
            result={
                "family": generated.family,
                "seed": generated.seed,
                "n": generated.points.n,
                "dim": generated.points.dim,
                "details": generated.details,
                "points": generated.points.points,
            }
        )
