from tukey_privacy.estimators.diameter import dp_diameter

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Private (alpha, Delta)-approximation of the diameter of D(kappa)"
    command_name = "diam"

    def execute_command(self, points, config, options):
        params = config.params()
        report = dp_diameter(points, params.kappa, params)
        return CommandOutcome(
            result={
                "kappa": params.kappa,
                "diameter": report.value,
                "delta_depth": report.delta_depth,
            },
            budget=report.budget,
        )
