import pytest

from tukey_privacy.conftest import uniform_points
from tukey_privacy.pipeline.services.pipeline import RunConfig, run_pipeline

# Large enough for 2(d+1)m = 120 at m = 20
PIPELINE_POINTS = 200


@pytest.fixture(scope="module")
def pipeline_points():
    return uniform_points(PIPELINE_POINTS, 2, seed=5)


@pytest.fixture(scope="module")
def pipeline_config():
    return RunConfig(epsilon=0.9, delta=1e-6, alpha=0.2, m=20, c=4.0, certify=True)


@pytest.fixture(scope="module")
def pipeline_report(pipeline_points, pipeline_config):
    return run_pipeline(pipeline_points, pipeline_config)
