import math

import pytest

from common.errors import ConfigError
from movement.config import NAMED_CONFIGS, MoveConfig, Strategy, named_config


def test_named_configurations():
    s512 = named_config("s512")
    assert (s512.samples, s512.points, s512.degree_cap, s512.strategy) == (512, 1, 100, Strategy.RESTRICTED)
    assert named_config("R0").strategy is Strategy.PRIMAL
    assert named_config("R0").degree_cap == math.inf
    assert named_config("W128").strategy is Strategy.WEIGHTED
    assert not named_config("P512").uses_arrangement
    assert set(NAMED_CONFIGS) >= {"S512", "S0", "R0", "R512", "W512", "R128", "W128"}


def test_unknown_name():
    with pytest.raises(ConfigError, match="unknown configuration"):
        named_config("X9")


def test_strategy_from_string():
    assert MoveConfig(strategy="weighted").strategy is Strategy.WEIGHTED


@pytest.mark.parametrize("kwargs", [
    {"samples": -1},
    {"points": -3},
    {"degree_cap": 0},
    {"degree_cap": 2.5},
    {"passes": 0},
    {"strategy": "primal", "points": 0},
    {"strategy": "restricted", "samples": 0},
])
def test_invalid_values(kwargs):
    with pytest.raises(ConfigError):
        MoveConfig(**kwargs)


def test_bad_strategy_name():
    with pytest.raises(ValueError):
        MoveConfig(strategy="greedy")


def test_overrides_skip_none():
    cfg = named_config("W512").with_overrides(points=20, seed=None, passes=3)
    assert (cfg.points, cfg.seed, cfg.passes) == (20, 0, 3)
    assert cfg.samples == 512
