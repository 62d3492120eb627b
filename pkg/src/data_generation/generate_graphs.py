"""
Benchmark instance generation.

This module generates the synthetic graph classes used by the benchmarks:
random k-regular graphs, Delaunay triangulations with a few extra random
edges, and complete graphs in convex position.
"""

from typing import Optional, Tuple

import networkx as nx
import numpy as np
from scipy.spatial import Delaunay

from common.errors import ConfigError
from graph_model.drawing import Drawing
from graph_model.graph import Graph

REGULAR_DEGREES = (3, 6, 9)


def random_regular_graph(k: int, n: int, seed: Optional[int] = None) -> Graph:
    """
    Generate a random k-regular graph.

    Args:
        k: Degree of every vertex
        n: Number of vertices (n * k must be even)
        seed: Seed of the networkx generator

    Returns:
        Graph on vertices 0..n-1
    """
    if k < 1 or n <= k or (n * k) % 2:
        raise ConfigError(f"no {k}-regular graph on {n} vertices")
    nxg = nx.random_regular_graph(k, n, seed=seed)
    return Graph.from_edges(n, nxg.edges())


def triangulation_graph(n: int, extra_edges: int = 10, seed: Optional[int] = None,
                        side: float = 1000.0) -> Tuple[Graph, Drawing]:
    """
    Delaunay triangulation of uniform random points plus random extra edges.

    Args:
        n: Number of points (at least 3)
        extra_edges: Non-triangulation edges added uniformly at random
        seed: Random seed
        side: Side of the square the points are drawn from

    Returns:
        (graph, drawing at the sampled points)
    """
    if n < 3:
        raise ConfigError(f"a triangulation needs at least 3 points, got {n}")
    rng = np.random.default_rng(seed)
    points = rng.uniform(0.0, side, size=(n, 2))
    simplices = Delaunay(points).simplices
    pairs = {tuple(sorted((int(a), int(b))))
             for tri in simplices.tolist()
             for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[0], tri[2]))}

    missing = n * (n - 1) // 2 - len(pairs)
    target = len(pairs) + min(extra_edges, missing)
    while len(pairs) < target:
        u, v = rng.choice(n, size=2, replace=False).tolist()
        pairs.add((min(u, v), max(u, v)))

    g = Graph.from_edges(n, sorted(pairs))
    return g, Drawing(g, points)


def convex_complete_graph(n: int, radius: float = 1.0, angle_jitter: float = 0.0,
                          seed: Optional[int] = None) -> Tuple[Graph, Drawing]:
    """
    K_n with its vertices on a circle.

    With angle_jitter = 0 the vertices form a regular polygon. A positive
    value shifts each angle by up to that fraction of the polygon's angular
    step, which keeps the points convex but removes concurrent diagonals.

    Returns:
        (graph, drawing)
    """
    if n < 1:
        raise ConfigError(f"n must be positive, got {n}")
    if not 0.0 <= angle_jitter < 0.5:
        raise ConfigError(f"angle_jitter must lie in [0, 0.5), got {angle_jitter}")
    step = 2.0 * np.pi / n
    angles = step * np.arange(n)
    if angle_jitter > 0.0:
        rng = np.random.default_rng(seed)
        angles = angles + rng.uniform(-angle_jitter, angle_jitter, size=n) * step
    points = radius * np.column_stack([np.cos(angles), np.sin(angles)])
    g = Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))
    return g, Drawing(g, points)
