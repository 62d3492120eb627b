"""
Empirical check of the sampled co-crossing estimator.

With one uniform edge sample S, lambda(p) = |E| * sum_u |coCrEdge(uv, p) & S| / |S|
should stay within a factor (1 +- delta) of coCr(p) for most positions p,
provided every incident edge of v misses at least epsilon * |E| edges
wherever v is placed (epsilon-well behaved).
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from common.errors import ConfigError, NotWellBehavedError
from crossings.crossing_count import count_vertex_at_many
from graph_model.drawing import Drawing, movement_square
from region_search.face_counts import crossing_minimal_region

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CoCrossingValidation:
    """
    delta: relative accuracy; gamma: failure probability; epsilon:
    well-behavedness; calibration: constant c of the sample size formula.
    """

    delta: float = 0.25
    gamma: float = 0.1
    epsilon: float = 0.1
    trials: int = 1000
    calibration: float = 1.0
    sample_size: Optional[int] = None
    probes: int = 1000
    exhaustive_edge_limit: int = 60

    def __post_init__(self):
        for name in ("delta", "gamma", "epsilon"):
            value = getattr(self, name)
            if not 0 < value < 1:
                raise ConfigError(f"{name} must lie in (0, 1), got {value}")
        if self.trials < 1 or self.probes < 1:
            raise ConfigError("trials and probes must be positive")
        if not self.calibration > 0:
            raise ConfigError(f"calibration constant must be > 0, got {self.calibration}")
        if self.sample_size is not None and self.sample_size < 1:
            raise ConfigError(f"sample size must be >= 1, got {self.sample_size}")


@dataclass(frozen=True)
class CoCrossingReport:
    vertex: int
    sample_size: int
    trials: int
    hits: int
    coverage: float
    delta: float
    max_crossed_fraction: float
    check_method: str
    ratios: np.ndarray = field(repr=False, compare=False)


def sample_size_for(epsilon: float, delta: float, gamma: float, calibration: float, m: int) -> int:
    """ceil(c * (ln 1/eps + ln 1/gamma) / (eps * delta^2)), at most m."""
    raw = calibration * (math.log(1.0 / epsilon) + math.log(1.0 / gamma)) / (epsilon * delta * delta)
    return max(1, min(m, math.ceil(raw)))


def max_crossed_per_edge(d: Drawing, v: int, params: CoCrossingValidation,
                         rng: np.random.Generator) -> tuple:
    """
    Largest number of edges one incident edge of v crosses over all placements.

    Small graphs are checked over every face of the single-neighbor
    arrangements; larger ones over uniform probes in the movement square.

    Returns:
        (maximum, method)
    """
    square = movement_square(d)
    neighbors = d.graph.adjacency[v].tolist()
    if d.graph.m <= params.exhaustive_edge_limit:
        worst = 0
        for u in neighbors:
            region = crossing_minimal_region(d, v, box=square, neighbors=[u])
            worst = max(worst, region.counts.max_count)
        return worst, "faces"
    lo = np.array([square.xmin, square.ymin])
    hi = np.array([square.xmax, square.ymax])
    probes = rng.uniform(lo, hi, size=(params.probes, 2))
    worst = 0
    for u in neighbors:
        worst = max(worst, int(count_vertex_at_many(d, v, probes, neighbors=[u]).max()))
    return worst, "probes"


def validate_cocrossing_approx(d: Drawing, v: int, params: CoCrossingValidation = CoCrossingValidation(),
                               rng: Optional[np.random.Generator] = None) -> CoCrossingReport:
    """
    Coverage of the sampled co-crossing estimator at random positions.

    Args:
        d: Drawing
        v: Vertex whose placements are probed
        params: Accuracy parameters, trial count and optional sample size
        rng: Random generator

    Returns:
        CoCrossingReport

    Raises:
        NotWellBehavedError: If some incident edge can cross more than
            (1 - epsilon) |E| edges
    """
    rng = np.random.default_rng(0) if rng is None else rng
    g = d.graph
    if g.degree[v] == 0:
        raise ConfigError(f"vertex {v} has no incident edges")
    m = g.m
    worst, method = max_crossed_per_edge(d, v, params, rng)
    limit = (1.0 - params.epsilon) * m
    if worst > limit:
        raise NotWellBehavedError(
            f"an edge at vertex {v} crosses {worst} of {m} edges (limit {limit:.1f})",
            {"vertex": v, "max_crossed": worst, "limit": limit, "m": m, "method": method},
        )

    size = params.sample_size or sample_size_for(params.epsilon, params.delta, params.gamma, params.calibration, m)
    size = min(size, m)
    sample = np.sort(rng.choice(m, size=size, replace=False))
    in_sample = np.zeros(m, dtype=bool)
    in_sample[sample] = True

    square = movement_square(d)
    probes = rng.uniform([square.xmin, square.ymin], [square.xmax, square.ymax], size=(params.trials, 2))
    co_cr = np.zeros(params.trials, dtype=np.int64)
    kept = np.zeros(params.trials, dtype=np.int64)
    for u, eid in zip(g.adjacency[v].tolist(), g.incident[v].tolist()):
        co_cr += (m - 1) - count_vertex_at_many(d, v, probes, neighbors=[u])
        kept += (size - int(in_sample[eid])) - count_vertex_at_many(d, v, probes, edges=sample, neighbors=[u])
    estimate = m * kept / size

    lower = (1.0 - params.delta) * co_cr
    upper = (1.0 + params.delta) * co_cr
    hit = (estimate >= lower) & (estimate <= upper)
    ratios = np.divide(estimate, co_cr, out=np.full(params.trials, np.nan), where=co_cr > 0)
    report = CoCrossingReport(
        vertex=int(v),
        sample_size=int(size),
        trials=params.trials,
        hits=int(hit.sum()),
        coverage=float(hit.mean()),
        delta=params.delta,
        max_crossed_fraction=worst / m,
        check_method=method,
        ratios=ratios,
    )
    logger.info("vertex %d: |S|=%d, coverage %.3f over %d probes", v, size, report.coverage, params.trials)
    return report
