import logging

import numpy as np

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.tukey import tukey_depths

from ._base import CommandOutcome, TukeyCommand

logger = logging.getLogger(__name__)


def parse_query(text: str) -> list[float]:
    try:
        return [float(value) for value in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"Query {text!r} is not a comma-separated point", field="query") from exc


class Command(TukeyCommand):
    help = "Exact Tukey depth of query points, or of every input point (not private)"
    command_name = "depth"

    def add_command_arguments(self, parser):
        parser.add_argument(
            "--query", action="append", default=[], help="Point as 'x,y[,z]'; repeatable"
        )

    def execute_command(self, points, config, options):
        if options["query"]:
            queries = np.array([parse_query(text) for text in options["query"]])
            if queries.shape[1] != points.dim:
                raise ValidationError(
                    f"Queries have {queries.shape[1]} coordinates, data has {points.dim}", field="query"
                )
        else:
            queries = points.points
        logger.warning("NOT PRIVATE: exact depths are computed from the raw data")
        depths = tukey_depths(queries, points)
        return CommandOutcome(result={"queries": queries, "depths": [int(d) for d in depths]})
