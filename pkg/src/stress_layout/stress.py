"""
Initial drawings: random grid placement refined by stress majorization.

stress(d) = sum_{i<j} w_ij (|p_i - p_j| - d_ij)^2 with w_ij = d_ij^-2 and
d_ij the graph distance. Vertices are updated one at a time with the
localized majorization step, so stress never increases within a sweep.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path
from scipy.spatial.distance import pdist, squareform

from common.errors import ConfigError, DisconnectedGraphError
from graph_model.drawing import Drawing, ensure_general_position
from graph_model.graph import Graph

logger = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class StressParams:
    max_iterations: int = 200
    tolerance: float = 1e-4
    grid_side: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ConfigError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be > 0, got {self.tolerance}")
        if self.grid_side is not None and self.grid_side < 2:
            raise ConfigError(f"grid side must be >= 2, got {self.grid_side}")

    def side_for(self, g: Graph) -> int:
        return self.grid_side if self.grid_side is not None else max(g.m, 2)


def random_grid_init(g: Graph, m: int, rng: np.random.Generator) -> Drawing:
    """
    Place every vertex on a uniformly random point of the m x m grid.

    Args:
        g: Graph
        m: Grid side; coordinates are drawn from {0, ..., m-1}
        rng: Random generator

    Returns:
        Drawing in general position
    """
    if m < 2:
        raise ConfigError(f"grid side must be >= 2, got {m}")
    d = Drawing(g, rng.integers(0, m, size=(g.n, 2)).astype(np.float64))
    ensure_general_position(d, rng)
    return d


def bfs_distances(g: Graph) -> np.ndarray:
    """All-pairs unweighted shortest-path lengths."""
    if g.n == 0:
        return np.zeros((0, 0))
    adjacency = _adjacency_matrix(g)
    dist = shortest_path(adjacency, method="D", directed=False, unweighted=True)
    if not np.isfinite(dist).all():
        raise DisconnectedGraphError("graph distances are infinite: the graph is disconnected")
    return dist


def _adjacency_matrix(g: Graph):
    ones = np.ones(g.m, dtype=np.float64)
    return coo_matrix((ones, (g.edges[:, 0], g.edges[:, 1])), shape=(g.n, g.n)).tocsr()


def stress_value(positions: np.ndarray, dist: np.ndarray) -> float:
    """Weighted stress of positions against a full distance matrix."""
    if positions.shape[0] < 2:
        return 0.0
    target = squareform(dist, checks=False)
    actual = pdist(positions)
    return float(np.sum((actual - target) ** 2 / target ** 2))


def _optimal_scale(positions: np.ndarray, dist: np.ndarray) -> float:
    target = squareform(dist, checks=False)
    actual = pdist(positions)
    w = 1.0 / target ** 2
    denom = float(np.sum(w * actual * actual))
    if denom == 0.0:
        return 1.0
    return float(np.sum(w * target * actual)) / denom


def majorize(d: Drawing, params: StressParams = StressParams(), dist: Optional[np.ndarray] = None,
             on_sweep: Optional[Callable[[int, float], None]] = None) -> Drawing:
    """
    Localized stress majorization.

    Args:
        d: Initial drawing (not modified)
        params: Iteration limit and relative tolerance
        dist: Precomputed graph distances (default: bfs_distances)
        on_sweep: Called with (sweep index, stress) after every sweep

    Returns:
        New drawing in general position
    """
    g = d.graph
    rng = np.random.default_rng(params.seed)
    out = d.copy()
    if g.n < 2:
        return out
    dist = bfs_distances(g) if dist is None else dist
    weights = np.zeros_like(dist)
    off = dist > 0
    weights[off] = 1.0 / dist[off] ** 2
    row_weight = weights.sum(axis=1)

    P = out.positions
    P *= _optimal_scale(P, dist)
    previous = stress_value(P, dist)
    logger.debug("stress %.6g after scaling", previous)

    for sweep in range(params.max_iterations):
        for i in range(g.n):
            diff = P[i] - P
            norm = np.hypot(diff[:, 0], diff[:, 1])
            coef = np.zeros(g.n)
            nz = norm > 0
            coef[nz] = weights[i, nz] * dist[i, nz] / norm[nz]
            update = weights[i] @ P + coef @ diff
            P[i] = update / row_weight[i]
        current = stress_value(P, dist)
        if on_sweep is not None:
            on_sweep(sweep, current)
        if current > previous * (1.0 + MONOTONE_SLACK) + MONOTONE_SLACK:
            logger.warning("stress rose from %.12g to %.12g in sweep %d", previous, current, sweep)
        if previous == 0.0 or (previous - current) / previous < params.tolerance:
            logger.debug("stress converged after %d sweeps at %.6g", sweep + 1, current)
            break
        previous = current

    ensure_general_position(out, rng)
    return out


def stress_layout(g: Graph, params: StressParams = StressParams(),
                  rng: Optional[np.random.Generator] = None) -> Drawing:
    """Random grid placement followed by majorization."""
    rng = np.random.default_rng(params.seed) if rng is None else rng
    initial = random_grid_init(g, params.side_for(g), rng)
    return majorize(initial, params)
