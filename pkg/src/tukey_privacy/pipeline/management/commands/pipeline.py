from tukey_privacy.pipeline.services.pipeline import KernelMethod, run_pipeline
from tukey_privacy.pipeline.services.reporting import pipeline_result
from tukey_privacy.pipeline.services.rendering import pipeline_scene, render_svg

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Private kernel pipeline: size check, kappa selection, box, transform, kernel"
    command_name = "pipeline"
    draws_svg = True

    def add_command_arguments(self, parser):
        parser.add_argument("--m", type=int, default=None, help="Override the prescribed m")
        parser.add_argument("--c", type=float, default=None, help="Fatness constant of the kernel")
        parser.add_argument("--method", choices=KernelMethod.values, default=KernelMethod.ABSFAT)
        parser.add_argument("--upper", type=float, default=None, help="Diameter upper bound D")
        parser.add_argument("--lower", type=float, default=None, help="Width lower bound B")
        parser.add_argument("--width-probe", action="store_true", help="Skip the box when D(kappa) is already fat")
        parser.add_argument("--certify", action="store_true", help="Exact sandwich check (not private)")
        parser.add_argument("--unclamped", action="store_true", help="Do not clip transformed regions to the cube")
        parser.add_argument("--timings", action="store_true", help="Include per-stage timings in the report")
        parser.add_argument("--svg", type=str, default=None, help="Also draw the scene to this file (d=2)")

    def config_overrides(self, options):
        return {
            "m": options["m"],
            "c": options["c"],
            "method": options["method"],
            "upper": options["upper"],
            "lower": options["lower"],
            "width_probe": options["width_probe"],
            "certify": options["certify"],
            "clamped": not options["unclamped"],
            "svg_path": options["svg"],
        }

    def execute_command(self, points, config, options):
        report = run_pipeline(points, config)
        scene = pipeline_scene(points, report) if points.dim == 2 else None
        if config.svg_path is not None:
            self.check_svg(points)
            render_svg(scene, config.svg_path)
        return CommandOutcome(
            result=pipeline_result(report),
            budget=report.budget,
            scene=scene,
            timings=report.timings if options["timings"] else None,
        )
