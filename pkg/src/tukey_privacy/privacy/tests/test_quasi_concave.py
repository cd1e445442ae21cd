import math

import pytest

from tukey_privacy.core.exceptions import ValidationError
from tukey_privacy.depth.completion import grid_max, tdc_eval, tdc_precompute
from tukey_privacy.depth.regions import region_chain
from tukey_privacy.privacy.noise import NoiseMode
from tukey_privacy.privacy.quasi_concave import (
    QuasiConcaveOracle,
    dp_binary_search_qc,
    qc_alpha,
    search_levels,
)

STEP = 2.0**-8


def peaked_oracle(peak_index: int, size: int) -> QuasiConcaveOracle:
    def evaluate(i, j):
        nearest = min(max(peak_index, i), j)
        return -abs(nearest - peak_index) * STEP

    return QuasiConcaveOracle(evaluate=evaluate, size=size, origin=0.0, step=STEP)


class TestBinarySearch:
    def test_disabled_finds_peak(self):
        result = dp_binary_search_qc(peaked_oracle(64, 257), 1.0, 0.05, NoiseMode.disabled().source())
        assert result == pytest.approx(0.25)

    def test_disabled_constant_goes_left(self):
        oracle = QuasiConcaveOracle(evaluate=lambda i, j: 3.0, size=257, origin=0.0, step=STEP)
        assert dp_binary_search_qc(oracle, 1.0, 0.05, NoiseMode.disabled().source()) == 0.0

    def test_single_point_grid(self):
        oracle = QuasiConcaveOracle(evaluate=lambda i, j: 0.0, size=1, origin=0.5, step=STEP)
        assert dp_binary_search_qc(oracle, 1.0, 0.05, NoiseMode.seeded(1).source()) == 0.5

    def test_delta_does_not_change_the_result(self):
        oracle = peaked_oracle(100, 257)
        for seed in range(20):
            pure = dp_binary_search_qc(oracle, 0.5, 0.05, NoiseMode.seeded(seed).source())
            approximate = dp_binary_search_qc(oracle, 0.5, 0.05, NoiseMode.seeded(seed).source(), delta=1e-6)
            assert pure == approximate

    @pytest.mark.parametrize("epsilon, delta", [(0.0, 0.0), (1.0, -1e-6)])
    def test_rejects_bad_parameters(self, epsilon, delta):
        with pytest.raises(ValidationError):
            dp_binary_search_qc(peaked_oracle(3, 9), epsilon, 0.05, NoiseMode.disabled().source(), delta=delta)

    def test_levels(self):
        assert search_levels(257) == 9
        assert search_levels(256) == 8
        assert search_levels(1) == 1

    def test_alpha_formula(self, settings):
        settings.TUKEY_QC_CONSTANT = 2.0
        assert qc_alpha(256, 4.0, 0.05) == pytest.approx(2.0 * (8 + math.log(20)) / 4.0)

    def test_seeded_tdc_utility(self, square_points):
        chain = region_chain(square_points)
        intervals = tdc_precompute(chain)
        first, last = chain.grid_range(0)
        oracle = QuasiConcaveOracle(
            evaluate=lambda i, j: grid_max(intervals, first + i, first + j, chain.grid_step),
            size=last - first + 1,
            origin=first * chain.grid_step,
            step=chain.grid_step,
        )
        alpha = qc_alpha(oracle.size, 5.0, 0.05)
        successes = 0
        for seed in range(200):
            x = dp_binary_search_qc(oracle, 5.0, 0.05, NoiseMode.seeded(seed).source())
            successes += tdc_eval(intervals, x) >= chain.kappa_max - alpha
        assert successes >= 180

    def test_noisy_search_sharp_at_high_epsilon(self):
        oracle = peaked_oracle(100, 257)
        hits = sum(
            dp_binary_search_qc(oracle, 1e5, 0.05, NoiseMode.seeded(seed).source()) == pytest.approx(100 * STEP)
            for seed in range(20)
        )
        assert hits == 20
