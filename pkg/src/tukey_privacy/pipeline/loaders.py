"""Reading and writing point files (CSV or JSON array-of-arrays)."""

import csv
import json
import logging
from pathlib import Path

import numpy as np

from tukey_privacy.core.exceptions import ParseError, ValidationError
from tukey_privacy.core.validation import require_int_range
from tukey_privacy.depth.points import PointSet

logger = logging.getLogger(__name__)

# Accepted range of the grid exponent for file input
MIN_GRID_EXPONENT = 4
MAX_GRID_EXPONENT = 32


def _is_json(path: Path, text: str) -> bool:
    if path.suffix.lower() == ".json":
        return True
    if path.suffix.lower() == ".csv":
        return False
    return text.lstrip().startswith("[")


def _parse_json(path: Path, text: str) -> list[list[float]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg})", path=str(path), line=exc.lineno) from exc
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise ParseError(f"{path}: expected a JSON array of coordinate arrays", path=str(path))
    try:
        return [[float(value) for value in row] for row in rows]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: non-numeric coordinate ({exc})", path=str(path)) from exc


def _parse_csv(path: Path, text: str) -> list[list[float]]:
    rows = []
    for line_number, record in enumerate(csv.reader(text.splitlines()), start=1):
        if not record or all(not cell.strip() for cell in record):
            continue
        try:
            rows.append([float(cell) for cell in record])
        except ValueError as exc:
            # A non-numeric first row is a header
            if line_number == 1 and not rows:
                logger.debug(f"Skipping CSV header {record}")
                continue
            raise ParseError(
                f"{path}, line {line_number}: non-numeric value in {record}",
                path=str(path),
                line=line_number,
            ) from exc
    return rows


def parse_points(path: Path, text: str) -> list[list[float]]:
    """Raw coordinate rows from file content."""
    return _parse_json(path, text) if _is_json(path, text) else _parse_csv(path, text)


def load_points(path: str | Path, dim: int | None, grid_exponent: int) -> PointSet:
    """
    Load a grid-aligned point set.

    Args:
        path: CSV (optional header, d numeric columns) or JSON array of d-arrays.
        dim: Expected dimension; None accepts whatever the file has.
        grid_exponent: Coordinates must be multiples of 2^-grid_exponent.

    Raises:
        ParseError: If the file cannot be read or rows have inconsistent lengths.
        OffGridPoint: If coordinates leave [0,1] or the grid (rows listed).
        ValidationError: On a bad grid exponent or too few points.
    """
    require_int_range("grid_exponent", grid_exponent, MIN_GRID_EXPONENT, MAX_GRID_EXPONENT)
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"Cannot read {path}: {exc.strerror}", path=str(path)) from exc

    rows = parse_points(path, text)
    if not rows:
        raise ParseError(f"{path}: no points found", path=str(path))
    lengths = {len(row) for row in rows}
    if len(lengths) != 1:
        raise ParseError(f"{path}: rows have differing lengths {sorted(lengths)}", path=str(path))
    found = lengths.pop()
    if dim is not None and found != dim:
        raise ValidationError(f"{path}: expected {dim} columns, found {found}", field="dim")

    points = PointSet.from_coordinates(np.array(rows), grid_exponent)
    logger.info(f"Loaded {points.n} points in dimension {points.dim} from {path}")
    return points


def dump_points(points: PointSet, path: str | Path) -> Path:
    """Write points as JSON (for a .json suffix) or header-less CSV."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        path.write_text(json.dumps(points.to_list()) + "\n")
    else:
        with path.open("w", newline="") as handle:
            csv.writer(handle).writerows(points.to_list())
    return path
