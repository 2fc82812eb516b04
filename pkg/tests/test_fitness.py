"""
超几何适应度测试
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from core.fitness import (
    build_fitness_table, fitness_cooperator, fitness_defector,
    hypergeometric_weight, hypergeometric_weights, log_comb,
)
from utils.errors import DomainError
from tests.conftest import comb_fitness, enumerated_fitness, enumerated_histogram, make_config


def test_log_comb_matches_math_comb():
    for n in range(0, 30):
        for r in range(0, n + 1):
            assert log_comb(n, r) == pytest.approx(math.log(math.comb(n, r)), abs=1e-12)


def test_log_comb_out_of_range_is_minus_inf():
    assert log_comb(3, 4) == -np.inf
    assert log_comb(3, -1) == -np.inf
    assert log_comb(-1, 0) == -np.inf


def test_weight_matches_enumeration():
    # Z=10, k=5, N=4, 焦点为背叛者：同伴从其余 9 人中取 3 人
    histogram = enumerated_histogram(10, 5, 4, cooperator=False)
    assert sum(histogram) == math.comb(9, 3)
    assert hypergeometric_weight(10, 5, 4, 2, focal_is_cooperator=False) == pytest.approx(
        histogram[2] / math.comb(9, 3), abs=1e-14)


@pytest.mark.parametrize("k,cooperator", [(1, True), (7, True), (12, True), (0, False), (6, False), (11, False)])
def test_weights_sum_to_one(k, cooperator):
    weights = hypergeometric_weights(12, k, 5, cooperator)
    assert weights.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(weights >= 0.0)


def test_weight_rejects_invalid_arguments():
    with pytest.raises(DomainError):
        hypergeometric_weight(10, 5, 4, 4, focal_is_cooperator=False)
    with pytest.raises(DomainError):
        hypergeometric_weight(10, 0, 4, 0, focal_is_cooperator=True)
    with pytest.raises(DomainError):
        hypergeometric_weight(10, 10, 4, 0, focal_is_cooperator=False)


def test_defector_next_to_full_cooperation(stag_hunt_cfg):
    # k = Z-1：唯一的背叛者的 5 名同伴全是合作者
    assert fitness_defector(49, stag_hunt_cfg) == pytest.approx(5 * 5.5 / 6, abs=1e-12)


def test_cooperator_at_full_cooperation(stag_hunt_cfg):
    assert fitness_cooperator(50, stag_hunt_cfg) == pytest.approx(4.5, abs=1e-12)


def test_small_population_matches_enumeration():
    cfg = make_config(10, 4, 2, 3.0)
    assert fitness_defector(5, cfg) == pytest.approx(
        enumerated_fitness(10, 5, 4, 2, 3.0, 1.0, cooperator=False), abs=1e-12)
    assert fitness_cooperator(5, cfg) == pytest.approx(
        enumerated_fitness(10, 5, 4, 2, 3.0, 1.0, cooperator=True), abs=1e-12)


def test_absent_strategy_fitness_is_undefined(stag_hunt_cfg):
    with pytest.raises(DomainError):
        fitness_cooperator(0, stag_hunt_cfg)
    with pytest.raises(DomainError):
        fitness_defector(50, stag_hunt_cfg)


def test_fitness_table_matches_enumeration_for_small_populations():
    """Z ≤ 12, N ≤ 5 的全部 (M, k) 组合与穷举一致"""
    F, c = 3.7, 1.3
    for Z in range(2, 13):
        for N in range(2, min(5, Z) + 1):
            c_hist = {k: enumerated_histogram(Z, k, N, True) for k in range(1, Z + 1)}
            d_hist = {k: enumerated_histogram(Z, k, N, False) for k in range(0, Z)}
            for M in range(1, N + 1):
                table = build_fitness_table(make_config(Z, N, M, F, c))
                for k in range(1, Z + 1):
                    expected = enumerated_fitness(Z, k, N, M, F, c, True, c_hist[k])
                    assert abs(table.cooperator(k) - expected) <= 1e-12, (Z, N, M, k)
                for k in range(0, Z):
                    expected = enumerated_fitness(Z, k, N, M, F, c, False, d_hist[k])
                    assert abs(table.defector(k) - expected) <= 1e-12, (Z, N, M, k)


def test_fitness_table_matches_exact_binomials(stag_hunt_cfg):
    table = build_fitness_table(stag_hunt_cfg)
    for k in (1, 10, 25, 40, 50):
        assert table.cooperator(k) == pytest.approx(
            comb_fitness(50, k, 6, 3, 5.5, 1.0, cooperator=True), abs=1e-12)
    for k in (0, 10, 25, 40, 49):
        assert table.defector(k) == pytest.approx(
            comb_fitness(50, k, 6, 3, 5.5, 1.0, cooperator=False), abs=1e-12)


def test_table_arrays_are_read_only(stag_hunt_cfg):
    table = build_fitness_table(stag_hunt_cfg)
    assert table.f_c.shape == (50,)
    assert table.f_d.shape == (50,)
    with pytest.raises(ValueError):
        table.f_c[0] = 0.0


def test_large_population_is_finite():
    table = build_fitness_table(make_config(5000, 10, 5, 8.0))
    assert np.all(np.isfinite(table.f_c))
    assert np.all(np.isfinite(table.f_d))


def test_public_goods_game_defection_dominates():
    # M = 1、F < N：背叛者适应度始终高于合作者
    cfg = make_config(30, 6, 1, 3.0)
    table = build_fitness_table(cfg)
    for k in range(1, 30):
        assert table.defector(k) > table.cooperator(k)


def test_population_smaller_than_group_is_rejected():
    with pytest.raises(ValidationError, match="Z ≥ N"):
        make_config(4, 6, 3, 5.5)
