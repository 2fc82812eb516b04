"""
收益函数与博弈参数测试
"""
import pytest
from pydantic import ValidationError

from core.game import (
    cooperator_payoffs, defector_payoffs, heaviside, payoff_cooperator, payoff_defector,
)
from schemas.game import GameSpec
from utils.errors import DomainError


@pytest.fixture
def stag_hunt() -> GameSpec:
    return GameSpec(group_size=6, threshold=3, enhancement=5.5, cost=1.0)


def test_heaviside_is_one_at_zero():
    assert heaviside(0) == 1.0
    assert heaviside(2) == 1.0
    assert heaviside(-1) == 0.0


def test_defector_payoff_below_threshold_is_zero(stag_hunt):
    assert payoff_defector(0, stag_hunt) == 0.0
    assert payoff_defector(2, stag_hunt) == 0.0


def test_defector_payoff_at_threshold(stag_hunt):
    assert payoff_defector(3, stag_hunt) == pytest.approx(3 * 5.5 / 6)


def test_cooperator_pays_cost_below_threshold(stag_hunt):
    assert payoff_cooperator(1, stag_hunt) == -1.0
    assert payoff_cooperator(2, stag_hunt) == -1.0


def test_cooperator_payoff_at_full_cooperation(stag_hunt):
    assert payoff_cooperator(6, stag_hunt) == pytest.approx(4.5)


@pytest.mark.parametrize("j", [-1, 7])
def test_defector_payoff_rejects_out_of_range(stag_hunt, j):
    with pytest.raises(DomainError):
        payoff_defector(j, stag_hunt)


def test_cooperator_payoff_needs_at_least_one_cooperator(stag_hunt):
    with pytest.raises(DomainError):
        payoff_cooperator(0, stag_hunt)


def test_payoff_vectors_follow_scalar_functions(stag_hunt):
    d = defector_payoffs(stag_hunt)
    c = cooperator_payoffs(stag_hunt)
    assert d.shape == c.shape == (6,)
    for j in range(6):
        assert d[j] == payoff_defector(j, stag_hunt)
        assert c[j] == payoff_cooperator(j + 1, stag_hunt)


def test_threshold_above_group_size_is_rejected():
    with pytest.raises(ValidationError, match="M ≤ N"):
        GameSpec(group_size=4, threshold=5, enhancement=3.0)


@pytest.mark.parametrize("field,value", [
    ("group_size", 1),
    ("threshold", 0),
    ("enhancement", 0.0),
    ("cost", -1.0),
    ("enhancement", float("nan")),
])
def test_invalid_game_parameters(field, value):
    params = dict(group_size=6, threshold=3, enhancement=5.5, cost=1.0)
    params[field] = value
    with pytest.raises(ValidationError):
        GameSpec(**params)


def test_game_spec_is_frozen(stag_hunt):
    with pytest.raises(ValidationError):
        stag_hunt.threshold = 2
