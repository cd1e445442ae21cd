"""Shared options, input handling and error mapping for the tukey commands."""

import logging
import secrets
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from django.core.management.base import BaseCommand, CommandError

from tukey_privacy.core.exceptions import TukeyPrivacyError, ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.pipeline.exceptions import AbortTooSmall
from tukey_privacy.pipeline.loaders import load_points
from tukey_privacy.pipeline.services.pipeline import RunConfig
from tukey_privacy.pipeline.services.reporting import build_report, emit_report
from tukey_privacy.pipeline.services.rendering import Scene, render_svg
from tukey_privacy.privacy.budget import PrivacyBudget

logger = logging.getLogger(__name__)

# Exit codes
EXIT_VALIDATION = 2
EXIT_ABORT = 3
EXIT_STAGE = 4


@dataclass
class CommandOutcome:
    """What a command produced, before formatting."""

    result: dict[str, Any]
    budget: PrivacyBudget = field(default_factory=PrivacyBudget)
    scene: Scene | None = None
    timings: dict[str, float] | None = None


class TukeyCommand(BaseCommand):
    """
    Base class for the tukey subcommands.

    Subclasses set `command_name`, add their own options in
    add_command_arguments() and implement execute(). Library errors are
    mapped to exit codes: 2 for invalid input or parameters, 3 when the
    pipeline aborts on a small dataset, 4 for any other failure.
    """

    command_name: str = ""
    uses_input: bool = True
    draws_svg: bool = False

    def add_arguments(self, parser):
        parser.add_argument("--epsilon", type=float, default=1.0, help="Privacy parameter epsilon")
        parser.add_argument("--delta", type=float, default=1e-6, help="Privacy parameter delta")
        parser.add_argument("--alpha", type=float, default=0.1, help="Multiplicative accuracy")
        parser.add_argument("--beta", type=float, default=0.05, help="Failure probability")
        parser.add_argument("--kappa", type=int, default=None, help="Target depth")
        noise = parser.add_mutually_exclusive_group()
        noise.add_argument("--seed", type=int, default=None, help="Seed of the noise stream")
        noise.add_argument(
            "--no-noise", action="store_true", help="Disable all noise (voids privacy; for testing)"
        )
        parser.add_argument("--input", type=Path, default=None, help="CSV or JSON point file")
        parser.add_argument("--output", type=Path, default=None, help="Output file (default: stdout)")
        parser.add_argument("--format", choices=["json", "svg"], default="json")
        parser.add_argument("--dim", type=int, default=None, help="Expected dimension")
        parser.add_argument("--grid-exp", type=int, default=10, help="Grid exponent u (step 2^-u)")
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def execute_command(self, points: PointSet | None, config: RunConfig, options: dict) -> CommandOutcome:
        raise NotImplementedError

    def config_overrides(self, options: dict) -> dict[str, Any]:
        """Extra RunConfig fields taken from command-specific options."""
        return {}

    def build_config(self, options: dict) -> RunConfig:
        seed, record_seed = options.get("seed"), True
        if seed is None and not options.get("no_noise"):
            seed, record_seed = secrets.randbits(63), False
        return RunConfig(
            epsilon=options["epsilon"],
            delta=options["delta"],
            alpha=options["alpha"],
            beta=options["beta"],
            kappa=options.get("kappa"),
            dim=options.get("dim"),
            grid_exponent=options["grid_exp"],
            seed=seed,
            record_seed=record_seed,
            input_path=options.get("input"),
            output_path=options.get("output"),
            **self.config_overrides(options),
        )

    def load_input(self, config: RunConfig) -> PointSet:
        if config.input_path is None:
            raise ValidationError(f"{self.command_name} needs --input", field="input")
        return load_points(config.input_path, config.dim, config.grid_exponent)

    def handle(self, *args, **options):
        try:
            config = self.build_config(options)
            points = self.load_input(config) if self.uses_input else None
            if options["format"] == "svg":
                self.check_svg(points)
            outcome = self.execute_command(points, config, options)
            text = self.format_outcome(outcome, config, points, options)
        except AbortTooSmall as exc:
            raise CommandError(str(exc), returncode=EXIT_ABORT) from exc
        except ValidationError as exc:
            raise CommandError(str(exc), returncode=EXIT_VALIDATION) from exc
        except TukeyPrivacyError as exc:
            raise CommandError(str(exc), returncode=EXIT_STAGE) from exc
        except OSError as exc:
            raise CommandError(f"Cannot write output: {exc}", returncode=EXIT_VALIDATION) from exc

        output = options.get("output")
        if output is None:
            self.stdout.write(text, ending="")
        else:
            self.stdout.write(self.style.SUCCESS(f"Wrote {options['format']} output to {output}"))

    def check_svg(self, points: PointSet | None) -> None:
        if not self.draws_svg:
            raise ValidationError(f"{self.command_name} has no SVG output", field="format")
        if points is not None and points.dim != 2:
            raise ValidationError(f"SVG output needs d=2, got d={points.dim}", field="format")

    def format_outcome(
        self, outcome: CommandOutcome, config: RunConfig, points: PointSet | None, options: dict
    ) -> str:
        output = options.get("output")
        if options["format"] == "svg":
            return render_svg(outcome.scene, output)
        payload = build_report(
            self.command_name,
            outcome.result,
            config=config,
            points=points,
            budget=outcome.budget,
            timings=outcome.timings,
        )
        return emit_report(payload, output)
