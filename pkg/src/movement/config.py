"""
Move configurations.

A configuration is the triple (|S|, |P|, K) plus a strategy: edge sample
size, point budget per vertex (or per neighbor group) and degree cap.
"""

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Optional

from common.errors import ConfigError


class Strategy(str, Enum):
    RESTRICTED = "restricted"
    PRIMAL = "primal"
    WEIGHTED = "weighted"


@dataclass(frozen=True)
class MoveConfig:
    """
    Parameters of one minimization run.

    samples: edges drawn per arrangement; None means every edge, 0 means
        no arrangement (primal sampling only)
    points: candidate positions per neighbor group
    degree_cap: maximum neighbors per arrangement; math.inf for no cap
    """

    samples: Optional[int] = 512
    points: int = 1000
    degree_cap: float = 100
    strategy: Strategy = Strategy.RESTRICTED
    passes: int = 1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "strategy", Strategy(self.strategy))
        if self.samples is not None and self.samples < 0:
            raise ConfigError(f"sample size must be >= 0, got {self.samples}")
        if self.points < 0:
            raise ConfigError(f"point budget must be >= 0, got {self.points}")
        if not (self.degree_cap == math.inf or (float(self.degree_cap).is_integer() and self.degree_cap >= 1)):
            raise ConfigError(f"degree cap must be a positive integer or inf, got {self.degree_cap}")
        if self.passes < 1:
            raise ConfigError(f"passes must be >= 1, got {self.passes}")
        if self.strategy is Strategy.PRIMAL and self.points < 1:
            raise ConfigError("primal strategy needs at least one point")
        if self.strategy is not Strategy.PRIMAL and self.samples == 0:
            raise ConfigError(f"{self.strategy.value} strategy needs a nonzero edge sample")

    @property
    def uses_arrangement(self) -> bool:
        return self.strategy is not Strategy.PRIMAL

    def with_overrides(self, **changes) -> "MoveConfig":
        return replace(self, **{k: v for k, v in changes.items() if v is not None})


NAMED_CONFIGS: Dict[str, MoveConfig] = {
    "S512": MoveConfig(samples=512, points=1, degree_cap=100, strategy=Strategy.RESTRICTED),
    "S0": MoveConfig(samples=0, points=1000, degree_cap=math.inf, strategy=Strategy.PRIMAL),
    "R0": MoveConfig(samples=0, points=1000, degree_cap=math.inf, strategy=Strategy.PRIMAL),
    "R512": MoveConfig(samples=512, points=1000, degree_cap=100, strategy=Strategy.RESTRICTED),
    "W512": MoveConfig(samples=512, points=1000, degree_cap=100, strategy=Strategy.WEIGHTED),
    "R128": MoveConfig(samples=128, points=1000, degree_cap=100, strategy=Strategy.RESTRICTED),
    "W128": MoveConfig(samples=128, points=1000, degree_cap=100, strategy=Strategy.WEIGHTED),
    "P512": MoveConfig(samples=0, points=512, degree_cap=math.inf, strategy=Strategy.PRIMAL),
}


def named_config(name: str) -> MoveConfig:
    try:
        return NAMED_CONFIGS[name.upper()]
    except KeyError:
        raise ConfigError(f"unknown configuration {name!r}; choose from {', '.join(NAMED_CONFIGS)}") from None
