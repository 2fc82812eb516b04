"""
蒙特卡洛模拟测试
"""
import math

import numpy as np
import pytest

from core import mc
from core.dynamics import build_kernel
from core.markov import stationary_distribution
from schemas.population import UpdateMode
from utils.errors import DomainError
from tests.conftest import make_config


def _total_variation(p, q) -> float:
    return 0.5 * float(np.abs(np.asarray(p) - np.asarray(q)).sum())


def test_social_learning_boundaries_absorb_without_mutation(stag_hunt_cfg):
    cfg = stag_hunt_cfg.replace(mutation=0.0)
    rng = np.random.default_rng(3)
    for _ in range(2000):
        assert mc.step(0, cfg, rng) == 0
        assert mc.step(50, cfg, rng) == 50


def test_counterfactual_thinker_can_leave_all_defect(stag_hunt_ct_cfg):
    # 反事实转移 T⁺(0) > 0，即使没有突变
    cfg = stag_hunt_ct_cfg.replace(mutation=0.0)
    report = mc.run(cfg, initial_k=0, steps=5000, burn_in=0, seed=1)
    assert report.empirical_distribution[0] < 1.0


def test_step_moves_by_at_most_one(stag_hunt_cfg):
    cfg = stag_hunt_cfg.replace(update_mode=UpdateMode.MIXED, chi=0.5)
    rng = np.random.default_rng(5)
    k = 25
    for _ in range(5000):
        new_k = mc.step(k, cfg, rng)
        assert abs(new_k - k) <= 1
        assert 0 <= new_k <= 50
        k = new_k


def test_step_rejects_invalid_state(stag_hunt_cfg):
    with pytest.raises(DomainError):
        mc.step(51, stag_hunt_cfg, np.random.default_rng(0))


def test_run_is_deterministic(stag_hunt_cfg):
    first = mc.run(stag_hunt_cfg, initial_k=25, steps=20000, burn_in=500, seed=42)
    second = mc.run(stag_hunt_cfg, initial_k=25, steps=20000, burn_in=500, seed=42)
    np.testing.assert_array_equal(first.empirical_distribution, second.empirical_distribution)
    assert first.final_state == second.final_state


def test_run_does_not_depend_on_chunk_size(stag_hunt_ct_cfg):
    whole = mc.run(stag_hunt_ct_cfg, initial_k=10, steps=5000, burn_in=100, seed=9)
    chunked = mc.run(stag_hunt_ct_cfg, initial_k=10, steps=5000, burn_in=100, seed=9, chunk_steps=37)
    np.testing.assert_array_equal(whole.empirical_distribution, chunked.empirical_distribution)
    assert whole.final_state == chunked.final_state


def test_step_replays_run_trajectory(stag_hunt_cfg):
    cfg = stag_hunt_cfg.replace(update_mode=UpdateMode.MIXED, chi=0.3)
    steps = 3000
    report = mc.run(cfg, initial_k=20, steps=steps, burn_in=0, seed=123, chunk_steps=256)
    rng = np.random.default_rng(123)
    k = 20
    counts = np.zeros(51)
    for _ in range(steps):
        k = mc.step(k, cfg, rng)
        counts[k] += 1
    assert k == report.final_state
    np.testing.assert_allclose(report.empirical_distribution, counts / steps, atol=1e-15)


def test_single_recorded_step_is_point_mass(stag_hunt_cfg):
    report = mc.run(stag_hunt_cfg, initial_k=25, steps=501, burn_in=500, seed=4)
    assert report.empirical_distribution.sum() == 1.0
    assert report.empirical_distribution[report.final_state] == 1.0


def test_run_validates_arguments(stag_hunt_cfg):
    with pytest.raises(DomainError):
        mc.run(stag_hunt_cfg, initial_k=51, steps=100, burn_in=0)
    with pytest.raises(DomainError):
        mc.run(stag_hunt_cfg, initial_k=10, steps=100, burn_in=100)


def test_default_burn_in_is_ten_times_population(stag_hunt_cfg):
    report = mc.run(stag_hunt_cfg, initial_k=25, steps=1000, seed=2)
    assert report.burn_in == 500


def test_replicate_seeds_are_distinct_and_stable():
    seeds = mc.replicate_seeds(2024, 4)
    assert len(set(seeds)) == 4
    assert seeds == mc.replicate_seeds(2024, 4)
    assert mc.replicate_seeds(2024, 1) == [2024]


def test_pool_reports_weights_by_recorded_steps(stag_hunt_cfg):
    reports = mc.run_replicates(stag_hunt_cfg, initial_k=25, steps=4000, burn_in=100, seed=8, replicates=3)
    pooled = mc.pool_reports(reports)
    expected = np.mean([r.empirical_distribution for r in reports], axis=0)
    np.testing.assert_allclose(pooled.empirical_distribution, expected, atol=1e-12)
    assert pooled.steps == 12000
    assert mc.pool_reports(reports[:1]) is reports[0]
    with pytest.raises(DomainError):
        mc.pool_reports([])


def test_process_pool_matches_serial(stag_hunt_cfg):
    serial = mc.run_replicates(stag_hunt_cfg, 25, 3000, 100, seed=5, replicates=2, workers=1)
    parallel = mc.run_replicates(stag_hunt_cfg, 25, 3000, 100, seed=5, replicates=2, workers=2)
    for a, b in zip(serial, parallel):
        np.testing.assert_array_equal(a.empirical_distribution, b.empirical_distribution)


@pytest.mark.slow
@pytest.mark.parametrize("mode", [UpdateMode.SL, UpdateMode.CT, UpdateMode.MIXED])
def test_long_run_matches_stationary_distribution(stag_hunt_cfg, mode):
    cfg = stag_hunt_cfg.replace(update_mode=mode, chi=0.5)
    analytic = stationary_distribution(build_kernel(cfg)).s
    # 从解析分布的众数出发；SL 链在 10⁷ 步内离不开初始吸引域
    report = mc.run(cfg, initial_k=int(analytic.argmax()), steps=10_000_000, seed=20240101)
    assert _total_variation(report.empirical_distribution, analytic) < 0.02


@pytest.mark.slow
def test_pure_mutation_run_is_binomial():
    from scipy.stats import binom
    cfg = make_config(50, 6, 3, 5.5, mutation=1.0)
    report = mc.run(cfg, initial_k=25, steps=10_000_000, seed=7)
    assert _total_variation(report.empirical_distribution, binom.pmf(np.arange(51), 50, 0.5)) < 0.02


@pytest.mark.slow
@pytest.mark.parametrize("mode", [UpdateMode.SL, UpdateMode.CT, UpdateMode.MIXED])
def test_one_step_frequencies_match_kernel(stag_hunt_cfg, mode):
    cfg = stag_hunt_cfg.replace(update_mode=mode, chi=0.5)
    kernel = build_kernel(cfg)
    trials = 1_000_000
    for index, k in enumerate((1, 12, 25, 38, 49)):
        up, down = mc.one_step_frequencies(cfg, k, trials, seed=100 + index)
        for observed, expected in ((up, kernel.t_plus[k]), (down, kernel.t_minus[k])):
            sigma = math.sqrt(expected * (1 - expected) / trials)
            # 30 次比较，逐次 4σ 使整体误报率约 0.2%
            assert abs(observed - expected) <= 4 * sigma + 1e-12
