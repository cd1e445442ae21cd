from tukey_privacy.depth.regions import region_chain
from tukey_privacy.geometry.polytope import hull_of_points
from tukey_privacy.kernels.absfat import kernel_absfat
from tukey_privacy.kernels.fat import kernel_fat
from tukey_privacy.pipeline.services.measures import applied_measures
from tukey_privacy.pipeline.services.pipeline import KernelMethod, certify_kernel
from tukey_privacy.pipeline.services.reporting import kernel_section
from tukey_privacy.pipeline.services.rendering import Scene
from tukey_privacy.privacy.budget import PrivacyBudget

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Private (alpha, Delta)-kernel of a fat D(kappa), without the fattening transform"
    command_name = "kernel"
    draws_svg = True

    def add_command_arguments(self, parser):
        parser.add_argument("--method", choices=KernelMethod.values, default=KernelMethod.ABSFAT)
        parser.add_argument("--c", type=float, default=None, help="Fatness constant")
        parser.add_argument("--certify", action="store_true", help="Exact sandwich check (not private)")

    def config_overrides(self, options):
        return {"method": options["method"], "c": options["c"], "certify": options["certify"]}

    def execute_command(self, points, config, options):
        params = config.params()
        kappa = params.kappa
        c = config.fatness_constant(points.dim)
        chain = region_chain(points)
        build = kernel_fat if config.method == KernelMethod.FAT else kernel_absfat
        kernel = build(chain, kappa, params, c)
        budget = PrivacyBudget().charge(f"kernel_{config.method}", *kernel.details["advanced"])
        if config.certify:
            kernel.certification = certify_kernel(chain, kernel, params)

        scene = Scene(title=f"Kernel of D({kappa})", points=points.points, kernel=kernel.points)
        scene.add_polytope(f"D({kappa})", "region", chain.region(kappa))
        if len(kernel.points):
            scene.add_polytope("CH(S)", "kernel", hull_of_points(kernel.points))
        return CommandOutcome(
            result={"kernel": kernel_section(kernel), "measures": applied_measures(kernel)},
            budget=budget,
            scene=scene,
        )
