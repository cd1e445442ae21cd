from tukey_privacy.kappa.mechanism import minimum_m, shifted_exp_mechanism

from ._base import CommandOutcome, TukeyCommand


class Command(TukeyCommand):
    help = "Private depth kappa whose region keeps half the volume of a shallower one"
    command_name = "select_kappa"

    def add_command_arguments(self, parser):
        parser.add_argument("--m", type=int, default=None, help="Index range (default: ceil(16/epsilon))")

    def config_overrides(self, options):
        return {"m": options["m"]}

    def execute_command(self, points, config, options):
        params = config.params()
        m = config.m if config.m is not None else minimum_m(params.epsilon)
        report = shifted_exp_mechanism(points, m, params)
        return CommandOutcome(
            result={
                "kappa": report.value,
                "in_range": 1 <= report.value <= m,
                "m": m,
                "utility_loss": report.delta_depth,
            },
            budget=report.budget,
        )
