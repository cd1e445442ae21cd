import pytest

from tukey_privacy.conftest import SQUARE_CORNERS
from tukey_privacy.core.exceptions import OffGridPoint, ParseError, ValidationError
from tukey_privacy.depth.points import PointSet
from tukey_privacy.pipeline.loaders import dump_points, load_points


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadPoints:
    def test_csv(self, tmp_path):
        path = write(tmp_path, "square.csv", "0,0\n1,0\n1,1\n0,1\n")
        points = load_points(path, dim=2, grid_exponent=8)
        assert points.n == 4
        assert points.to_list() == SQUARE_CORNERS

    def test_csv_header_is_skipped(self, tmp_path):
        path = write(tmp_path, "square.csv", "x,y\n0,0\n1,0\n1,1\n0,1\n")
        assert load_points(path, dim=None, grid_exponent=8).n == 4

    def test_json_sniffed_without_suffix(self, tmp_path):
        path = write(tmp_path, "points.txt", "[[0, 0], [1, 0], [0, 1]]")
        assert load_points(path, dim=2, grid_exponent=8).n == 3

    def test_off_grid(self, tmp_path):
        path = write(tmp_path, "bad.csv", "0,0\n1.5,0\n1,1\n0,1\n")
        with pytest.raises(OffGridPoint) as excinfo:
            load_points(path, dim=2, grid_exponent=8)
        assert excinfo.value.rows == [1]

    def test_non_numeric_row(self, tmp_path):
        path = write(tmp_path, "bad.csv", "0,0\n1,zero\n")
        with pytest.raises(ParseError) as excinfo:
            load_points(path, dim=2, grid_exponent=8)
        assert excinfo.value.line == 2

    @pytest.mark.parametrize(
        "name, text",
        [
            ("empty.csv", ""),
            ("ragged.csv", "0,0\n1\n0,1\n"),
            ("broken.json", "[[0, 0], [1,"),
            ("object.json", '{"x": 1}'),
        ],
    )
    def test_parse_errors(self, tmp_path, name, text):
        with pytest.raises(ParseError):
            load_points(write(tmp_path, name, text), dim=None, grid_exponent=8)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_points(tmp_path / "missing.csv", dim=2, grid_exponent=8)

    def test_dimension_mismatch(self, tmp_path):
        path = write(tmp_path, "square.csv", "0,0\n1,0\n1,1\n0,1\n")
        with pytest.raises(ValidationError) as excinfo:
            load_points(path, dim=3, grid_exponent=8)
        assert excinfo.value.field == "dim"

    def test_grid_exponent_range(self, tmp_path):
        path = write(tmp_path, "square.csv", "0,0\n1,0\n1,1\n0,1\n")
        with pytest.raises(ValidationError):
            load_points(path, dim=2, grid_exponent=2)


class TestDumpPoints:
    @pytest.mark.parametrize("name", ["square.json", "square.csv"])
    def test_reload(self, tmp_path, square_points, name):
        path = dump_points(square_points, tmp_path / name)
        reloaded = load_points(path, dim=2, grid_exponent=8)
        assert reloaded.to_list() == square_points.to_list()

    def test_quarter_grid(self, tmp_path):
        points = PointSet.from_coordinates([[0.25, 0.5], [0.75, 0.5], [0.5, 1.0]], grid_exponent=4)
        path = dump_points(points, tmp_path / "points.csv")
        assert path.read_text().splitlines()[0] == "0.25,0.5"
