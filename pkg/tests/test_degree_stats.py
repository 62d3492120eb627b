import pytest

from analysis.degree_stats import degree_histogram, degree_table
from conftest import benchmark_path, complete_edges
from data_generation.generate_graphs import random_regular_graph
from graph_model.graph import Graph, load_graph


def test_star_histogram():
    g = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    s = degree_histogram(g)
    assert s.histogram == {1: 4, 4: 1}
    assert s.mean_degree == pytest.approx(1.6)
    assert s.max_degree == 4


def test_regular_graph_is_flat():
    s = degree_histogram(random_regular_graph(3, 20, seed=0))
    assert s.histogram == {3: 20}
    assert s.mean_degree == 3.0


def test_table_has_one_row_per_graph():
    graphs = {"k5": Graph.from_edges(5, complete_edges(5)), "path": Graph.from_edges(3, [(0, 1), (1, 2)])}
    table = degree_table(graphs)
    assert table["graph"].tolist() == ["k5", "path"]
    assert table.loc[0, "m"] == 10
    assert table.loc[1, "mean_degree"] == pytest.approx(1.33)


@pytest.mark.skipif(not benchmark_path("football").exists(), reason="football benchmark file not fetched")
def test_football_mean_degree():
    g, _ = load_graph(benchmark_path("football"))
    s = degree_histogram(g)
    assert (s.n, s.m) == (115, 613)
    assert s.mean_degree == pytest.approx(10.66, abs=0.005)
