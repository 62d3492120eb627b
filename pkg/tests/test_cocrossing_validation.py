import numpy as np
import pytest

from analysis.arrangement_profile import PROFILE_COLUMNS, arrangement_profile
from analysis.cocrossing_validation import (
    CoCrossingValidation,
    max_crossed_per_edge,
    sample_size_for,
    validate_cocrossing_approx,
)
from common.errors import ConfigError, NotWellBehavedError
from data_generation.generate_graphs import triangulation_graph
from graph_model.drawing import Drawing
from graph_model.graph import Graph
from movement.config import MoveConfig


def comb_drawing(k=10):
    """Edge 0-1 runs through k short vertical edges; 1 can see almost every edge."""
    positions = [(0.0, 0.0), (10.0, 0.1)]
    pairs = [(0, 1)]
    for i in range(k):
        x = 0.5 + 0.9 * i
        positions += [(x, -1.0 - 0.01 * i), (x, 1.0 + 0.013 * i)]
        pairs.append((2 + 2 * i, 3 + 2 * i))
    g = Graph.from_edges(len(positions), pairs)
    return Drawing(g, np.array(positions))


def test_sample_size_formula():
    assert sample_size_for(0.1, 0.25, 0.1, 1.0, 10_000) == 737
    assert sample_size_for(0.1, 0.25, 0.1, 1.0, 300) == 300
    assert sample_size_for(0.5, 0.9, 0.9, 0.01, 50) == 1


@pytest.mark.parametrize("kwargs", [
    {"delta": 0.0}, {"gamma": 1.0}, {"epsilon": -0.1}, {"trials": 0}, {"calibration": 0}, {"sample_size": 0},
])
def test_invalid_parameters(kwargs):
    with pytest.raises(ConfigError):
        CoCrossingValidation(**kwargs)


def test_dense_crossing_edge_is_not_well_behaved():
    d = comb_drawing()
    worst, method = max_crossed_per_edge(d, 0, CoCrossingValidation(), np.random.default_rng(0))
    assert (worst, method) == (10, "faces")
    with pytest.raises(NotWellBehavedError) as exc:
        validate_cocrossing_approx(d, 0)
    assert exc.value.diagnostics["max_crossed"] == 10
    assert exc.value.diagnostics["m"] == 11


def test_isolated_vertex_is_rejected():
    g = Graph.from_edges(3, [(0, 1)])
    d = Drawing(g, np.array([[0.0, 0.0], [1.0, 0.2], [2.0, 0.0]]))
    with pytest.raises(ConfigError):
        validate_cocrossing_approx(d, 2)


def test_full_sample_is_exact(square_k4):
    report = validate_cocrossing_approx(square_k4, 3, CoCrossingValidation(epsilon=0.5, trials=50))
    assert report.sample_size == square_k4.graph.m
    assert report.coverage == 1.0
    assert np.allclose(report.ratios[~np.isnan(report.ratios)], 1.0)


def test_triangulation_coverage():
    _, d = triangulation_graph(60, extra_edges=5, seed=0)
    v = int(np.argmax(d.graph.degree))
    params = CoCrossingValidation(sample_size=100, trials=200, probes=300)
    report = validate_cocrossing_approx(d, v, params, np.random.default_rng(1))
    assert report.check_method == "probes"
    assert report.sample_size == 100
    assert report.max_crossed_fraction < 0.9
    assert report.coverage >= 0.9


def test_arrangement_profile(random_drawing):
    table = arrangement_profile(random_drawing, cfg=MoveConfig(samples=None), limit=3)
    assert list(table.columns) == PROFILE_COLUMNS
    assert len(table) == 3
    assert (table["subpieces"] >= table["atoms"]).all()
    assert (table["faces"] >= 2).all()
    assert (table["min_count"] >= 0).all()


@pytest.mark.slow
def test_coverage_grows_with_the_sample():
    sizes = (8, 32, 128, 512)
    coverage = np.zeros((10, len(sizes)))
    for i in range(10):
        _, d = triangulation_graph(200, extra_edges=10, seed=i)
        v = int(np.argmax(d.graph.degree))
        for j, size in enumerate(sizes):
            params = CoCrossingValidation(sample_size=size, trials=200, probes=300)
            report = validate_cocrossing_approx(d, v, params, np.random.default_rng([i, size]))
            coverage[i, j] = report.coverage
    mean = coverage.mean(axis=0)
    assert (np.diff(mean) >= -0.02).all(), mean
    assert mean[-1] > mean[0]
    assert mean[-1] >= 0.9
