"""
Shared fixtures. Puts src/ on sys.path so tests import the packages by name.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from geometry.predicates import COORDINATE_COUNTER  # noqa: E402
from graph_model.drawing import Drawing  # noqa: E402
from graph_model.graph import Graph  # noqa: E402

BENCHMARK_DIR = Path(__file__).parent.parent / "data" / "benchmarks"


def benchmark_path(name):
    """User-fetched benchmark file data/benchmarks/<name>.<ext>; the .mtx path when none is present."""
    found = sorted(BENCHMARK_DIR.glob(f"{name}.*"))
    return found[0] if found else BENCHMARK_DIR / f"{name}.mtx"


def complete_edges(n):
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def convex_positions(n, jitter=0.0, seed=0):
    """Points on the unit circle; jitter shifts angles by a fraction of the step."""
    step = 2.0 * np.pi / n
    angles = step * np.arange(n)
    if jitter:
        angles = angles + np.random.default_rng(seed).uniform(-jitter, jitter, n) * step
    return np.column_stack([np.cos(angles), np.sin(angles)])


def random_graph_drawing(seed, max_n=20, max_m=40, side=10.0):
    """Random graph with n <= max_n and m <= max_m, drawn at uniform positions."""
    r = np.random.default_rng(seed)
    n = int(r.integers(6, max_n + 1))
    m = int(r.integers(n, min(max_m, n * (n - 1) // 2) + 1))
    pairs = set()
    while len(pairs) < m:
        u, v = sorted(r.choice(n, 2, replace=False).tolist())
        pairs.add((u, v))
    g = Graph.from_edges(n, sorted(pairs))
    return Drawing(g, r.uniform(0.0, side, size=(n, 2)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def square_k4():
    """K4 on the unit square; only the diagonals cross."""
    g = Graph.from_edges(4, complete_edges(4))
    return Drawing(g, np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))


@pytest.fixture
def convex_k5():
    g = Graph.from_edges(5, complete_edges(5))
    return Drawing(g, convex_positions(5, jitter=0.1, seed=3))


@pytest.fixture
def convex_k6():
    g = Graph.from_edges(6, complete_edges(6))
    return Drawing(g, convex_positions(6, jitter=0.1, seed=4))


@pytest.fixture
def random_drawing():
    """Sparse random graph in general position."""
    r = np.random.default_rng(7)
    n = 12
    pairs = {tuple(sorted(r.choice(n, 2, replace=False).tolist())) for _ in range(24)}
    pairs |= {(i, i + 1) for i in range(n - 1)}
    g = Graph.from_edges(n, sorted(pairs))
    return Drawing(g, r.uniform(0.0, 10.0, size=(n, 2)))


@pytest.fixture
def coordinate_counter():
    COORDINATE_COUNTER.reset()
    yield COORDINATE_COUNTER
    COORDINATE_COUNTER.reset()
