from tukey_privacy.estimators.width import dp_width

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Private (alpha, Delta)-approximation of the width of D(kappa)"
    command_name = "width"

    def add_command_arguments(self, parser):
        parser.add_argument("--upper", type=float, default=None, help="Diameter upper bound D")
        parser.add_argument("--lower", type=float, default=None, help="Width lower bound B")

    def config_overrides(self, options):
        return {"upper": options["upper"], "lower": options["lower"]}

    def execute_command(self, points, config, options):
        params = config.params()
        report = dp_width(points, params.kappa, params, upper=config.upper, lower=config.lower)
        return CommandOutcome(
            result={
                "kappa": params.kappa,
                "width": report.value,
                "delta_depth": report.delta_depth,
                "upper": report.details["upper"],
                "lower": report.details["lower"],
                "steps": report.details["steps"],
            },
            budget=report.budget,
        )
