import math

import numpy as np
import pytest

from tukey_privacy.conftest import uniform_points
from tukey_privacy.estimators.params import DPParams
from tukey_privacy.kappa.exceptions import MTooSmall
from tukey_privacy.kappa.mechanism import (
    minimum_m,
    shifted_exp_mechanism,
    shifted_exp_output_pmf,
    shifted_exp_privacy_loss,
    utility_loss,
)
from tukey_privacy.kappa.query import build_query_table
from tukey_privacy.privacy.noise import NoiseMode


class TestDisabled:
    def test_argmax(self):
        table = build_query_table(np.ones(20), 20)
        report = shifted_exp_mechanism(table, 20, DPParams(epsilon=0.9))
        assert report.value == 10
        assert report.details["shift"] == 0

    def test_flat_q(self):
        table = build_query_table(2.0 ** -np.arange(1, 21), 20)
        assert shifted_exp_mechanism(table, 20, DPParams(epsilon=0.9)).value == 1

    def test_from_points(self, uniform_2d):
        report = shifted_exp_mechanism(uniform_2d, 20, DPParams(epsilon=0.9))
        assert report.value == report.details["table"].best
        assert report.budget.epsilon_spent == pytest.approx(0.9)


class TestValidation:
    def test_m_too_small(self):
        with pytest.raises(MTooSmall) as info:
            shifted_exp_mechanism(build_query_table(np.ones(10), 10), 10, DPParams(epsilon=1.0))
        assert info.value.minimum == pytest.approx(16.0)

    def test_minimum_m(self):
        assert minimum_m(0.9) == 18


class TestOutputDistribution:
    def test_pmf_normalized(self):
        q = build_query_table(np.ones(20), 20).q
        support, pmf = shifted_exp_output_pmf(q, 0.9)
        assert len(support) == len(pmf)
        assert pmf.sum() == pytest.approx(1.0, abs=1e-9)

    def test_empirical_matches(self):
        q = build_query_table(np.ones(20), 20).q
        support, pmf = shifted_exp_output_pmf(q, 0.9)
        table = build_query_table(np.ones(20), 20)
        params = DPParams(epsilon=0.9, mode=NoiseMode.seeded(17))
        source = params.source()
        draws = np.array([shifted_exp_mechanism(table, 20, params, source).value for _ in range(50_000)])
        empirical = np.array([np.mean(draws == j) for j in support])
        assert 0.5 * np.abs(empirical - pmf).sum() < 0.03

    @pytest.mark.slow
    def test_empirical_matches_large(self):
        q = build_query_table(np.ones(20), 20).q
        support, pmf = shifted_exp_output_pmf(q, 0.9)
        table = build_query_table(np.ones(20), 20)
        params = DPParams(epsilon=0.9, mode=NoiseMode.seeded(18))
        source = params.source()
        draws = np.array([shifted_exp_mechanism(table, 20, params, source).value for _ in range(1_000_000)])
        values, counts = np.unique(draws, return_counts=True)
        empirical = dict(zip(values.tolist(), (counts / len(draws)).tolist()))
        distance = 0.5 * sum(abs(empirical.get(int(j), 0.0) - p) for j, p in zip(support, pmf))
        assert distance < 0.01


def test_privacy_loss_on_neighbours():
    epsilon, m = 0.9, 18
    rng = np.random.default_rng(42)
    for seed in range(12):
        points = uniform_points(7, 2, seed=seed, grid_exponent=8)
        x = np.round(rng.random(2) * 256) / 256
        q_small = build_query_table(points, m).q
        q_large = build_query_table(points.with_point(x), m).q
        assert shifted_exp_privacy_loss(q_small, q_large, epsilon) <= epsilon + 1e-9


def test_utility():
    epsilon, m, beta = 5.0, 200, 0.05
    table = build_query_table(np.ones(m), m)
    params = DPParams(epsilon=epsilon, mode=NoiseMode.seeded(3))
    source = params.source()
    target = table.max_q - utility_loss(m, epsilon, beta)
    hits = 0
    for _ in range(200):
        j = shifted_exp_mechanism(table, m, params, source).value
        hits += 1 <= j <= m and table.value(j) >= target
    assert hits >= 180


def test_utility_loss():
    assert utility_loss(20, 1.0, 0.05) == pytest.approx(17 * math.log(800))
