import pytest

from tukey_privacy.privacy.noise import NoiseMode
from tukey_privacy.privacy.svt import svt_run


def constant_queries(values, calls):
    def make(i, value):
        def query():
            calls.append(i)
            return value

        return query

    return [make(i, value) for i, value in enumerate(values)]


class TestSVT:
    def test_first_crossing(self):
        calls = []
        result = svt_run(constant_queries([3, 7, 9], calls), 7, 1.0, 0.0, NoiseMode.disabled().source())
        assert result == 1
        assert calls == [0, 1]

    def test_no_crossing(self):
        calls = []
        result = svt_run(constant_queries([1, 2, 3], calls), 7, 1.0, 0.0, NoiseMode.disabled().source())
        assert result is None
        assert calls == [0, 1, 2]

    def test_margin_ignored_when_disabled(self):
        result = svt_run(constant_queries([3, 7], []), 7, 1.0, 100.0, NoiseMode.disabled().source())
        assert result == 1

    def test_margin_lowers_threshold(self):
        # Noise at scale 3/1e6 is negligible next to the margin
        result = svt_run(constant_queries([3, 7], []), 7, 1e6, 5.0, NoiseMode.seeded(1).source())
        assert result == 0

    @pytest.mark.parametrize("seed", [1, 2, 3])
    def test_deterministic(self, seed):
        values = [0, 1, 2, 3, 4, 5, 6, 7, 8]
        first = svt_run(constant_queries(values, []), 5, 1.0, 0.0, NoiseMode.seeded(seed).source())
        second = svt_run(constant_queries(values, []), 5, 1.0, 0.0, NoiseMode.seeded(seed).source())
        assert first == second

    def test_lazy_evaluation_under_noise(self):
        calls = []
        result = svt_run(constant_queries([0, 50, 0, 0], calls), 10, 1.0, 0.0, NoiseMode.seeded(4).source())
        assert result is not None
        assert max(calls) == result

    def test_trace(self):
        trace = []
        svt_run(constant_queries([3, 7, 9], []), 7, 1.0, 0.0, NoiseMode.disabled().source(), trace)
        assert [step.value for step in trace] == [3, 7]
        assert [step.halted for step in trace] == [False, True]
