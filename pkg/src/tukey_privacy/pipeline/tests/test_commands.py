import json
from io import StringIO

import pytest
from django.core.management import call_command
from django.core.management.base import CommandError

from tukey_privacy.conftest import uniform_points
from tukey_privacy.geometry.exceptions import GeometryError
from tukey_privacy.pipeline.loaders import dump_points
from tukey_privacy.pipeline.services import pipeline as pipeline_service

PIPELINE_OPTIONS = ["--no-noise", "--epsilon", "0.9", "--alpha", "0.2", "--m", "20", "--c", "4"]


def run(*args):
    out = StringIO()
    call_command(*args, stdout=out)
    return out.getvalue()


@pytest.fixture
def square_file(tmp_path, square_points):
    return dump_points(square_points, tmp_path / "square.csv")


@pytest.fixture
def uniform_file(tmp_path, pipeline_points):
    return dump_points(pipeline_points, tmp_path / "uniform.json")


class TestDepthCommand:
    def test_json_to_stdout(self, square_file):
        report = json.loads(run("depth", "--input", str(square_file), "--grid-exp", "8", "--query", "0.5,0.5"))
        assert report["command"] == "depth"
        assert report["result"]["depths"] == [2]
        assert report["budget"]["epsilon"] == 0

    def test_query_dimension(self, square_file):
        with pytest.raises(CommandError) as excinfo:
            run("depth", "--input", str(square_file), "--grid-exp", "8", "--query", "0.5,0.5,0.5")
        assert excinfo.value.returncode == 2

    def test_no_svg(self, square_file):
        with pytest.raises(CommandError) as excinfo:
            run("depth", "--input", str(square_file), "--grid-exp", "8", "--format", "svg")
        assert excinfo.value.returncode == 2


class TestRegionCommand:
    def test_svg(self, square_file):
        text = run("region", "--input", str(square_file), "--grid-exp", "8", "--format", "svg")
        assert text.lstrip().startswith("<svg")
        assert text.count('class="point"') == 4

    def test_output_file(self, tmp_path, square_file):
        path = tmp_path / "region.json"
        message = run("region", "--input", str(square_file), "--grid-exp", "8", "--output", str(path))
        assert "Wrote json output" in message
        assert json.loads(path.read_text())["result"]["kappa_max"] == 2


class TestPipelineCommand:
    def test_json(self, uniform_file):
        report = json.loads(run("pipeline", "--input", str(uniform_file), *PIPELINE_OPTIONS))
        assert report["command"] == "pipeline"
        assert report["config"]["mode"] == "disabled"
        assert "timings" not in report
        stages = report["budget"]["stages"]
        assert report["budget"]["epsilon"] == pytest.approx(sum(s["epsilon"] for s in stages.values()))

    def test_byte_stable(self, uniform_file):
        first = run("pipeline", "--input", str(uniform_file), *PIPELINE_OPTIONS)
        second = run("pipeline", "--input", str(uniform_file), *PIPELINE_OPTIONS)
        assert first == second

    def test_timings_and_svg(self, tmp_path, uniform_file):
        svg = tmp_path / "scene.svg"
        report = json.loads(
            run("pipeline", "--input", str(uniform_file), *PIPELINE_OPTIONS, "--timings", "--svg", str(svg))
        )
        assert "kernel" in report["timings"]
        assert svg.read_text().lstrip().startswith("<svg")

    def test_missing_input(self):
        with pytest.raises(CommandError) as excinfo:
            run("pipeline", *PIPELINE_OPTIONS)
        assert excinfo.value.returncode == 2

    def test_off_grid_input(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0,0\n1.5,0\n0,1\n")
        with pytest.raises(CommandError) as excinfo:
            run("pipeline", "--input", str(path), *PIPELINE_OPTIONS)
        assert excinfo.value.returncode == 2

    def test_abort_exit_code(self, tmp_path):
        path = dump_points(uniform_points(20, 2, seed=1), tmp_path / "small.csv")
        with pytest.raises(CommandError) as excinfo:
            run("pipeline", "--input", str(path), "--no-noise", "--m", "16", "--c", "4")
        assert excinfo.value.returncode == 3

    def test_stage_failure_exit_code(self, uniform_file, monkeypatch):
        def failing_bbox(*args, **kwargs):
            raise GeometryError("no box")

        monkeypatch.setattr(pipeline_service, "bbox_private", failing_bbox)
        with pytest.raises(CommandError) as excinfo:
            run("pipeline", "--input", str(uniform_file), *PIPELINE_OPTIONS)
        assert excinfo.value.returncode == 4

    def test_fresh_seed_not_reported(self, uniform_file):
        report = json.loads(
            run("pipeline", "--input", str(uniform_file), "--epsilon", "0.9", "--alpha", "0.2", "--m", "20", "--c", "4")
        )
        assert report["config"]["seed"] is None
        assert report["config"]["mode"] == "seeded(fresh)"


class TestSelectKappaCommand:
    def test_in_range(self, uniform_file):
        report = json.loads(run("select_kappa", "--input", str(uniform_file), "--no-noise", "--m", "20"))
        assert report["result"]["in_range"] is True
        assert report["budget"]["epsilon"] == pytest.approx(1.0)


class TestGenCommand:
    def test_points_file(self, tmp_path):
        path = tmp_path / "points.csv"
        report = json.loads(run("gen", "--family", "uniform", "--n", "30", "--dim", "2", "--seed", "4", "--points", str(path)))
        assert report["result"]["n"] == 30
        assert report["input"] is None
        assert len(path.read_text().splitlines()) == 30

    def test_default_seed_is_reproducible(self):
        assert run("gen", "--n", "20") == run("gen", "--n", "20")


class TestAuditCommand:
    def test_passes(self, tmp_path):
        path = dump_points(uniform_points(12, 2, seed=2, grid_exponent=8), tmp_path / "small.csv")
        report = json.loads(run("audit", "--input", str(path), "--grid-exp", "8", "--epsilon", "0.9", "--m", "18", "--pairs", "3"))
        assert len(report["result"]["pairs"]) == 3
        assert report["result"]["passes"] is True

    def test_m_too_small(self, square_file):
        with pytest.raises(CommandError) as excinfo:
            run("audit", "--input", str(square_file), "--grid-exp", "8", "--m", "4")
        assert excinfo.value.returncode == 2
