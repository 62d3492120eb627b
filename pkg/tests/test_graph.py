import io

import networkx as nx
import numpy as np
import pytest

from conftest import benchmark_path
from common.errors import EmptyGraphError, GraphFormatError
from graph_model.graph import (
    Graph,
    detect_format,
    load_graph,
    parse_edge_list,
    parse_metis,
    preprocess,
    write_edge_list,
)


def test_parse_edge_list_drops_duplicates_and_loops():
    g, report = parse_edge_list(["# comment", "0 1", "1 2", "", "2 0", "1 0", "3 3"])
    assert g.n == 4
    assert g.m == 3
    assert report.duplicates == 1
    assert report.self_loops == 1
    assert g.edges.tolist() == [[0, 1], [0, 2], [1, 2]]
    assert g.adjacency[0].tolist() == [1, 2]
    assert g.incident[2].tolist() == [1, 2]


@pytest.mark.parametrize("line", ["0 x", "7", "-1 2"])
def test_parse_edge_list_rejects_malformed_lines(line):
    with pytest.raises(GraphFormatError):
        parse_edge_list(["0 1", line])


def test_parse_metis_triangle():
    g, report = parse_metis(["% DIMACS", "3 3", "2 3", "1 3", "1 2"])
    assert g.n == 3
    assert g.m == 3
    assert report.duplicates == 0


def test_parse_metis_with_edge_weights():
    g, _ = parse_metis(["3 2 1", "2 5", "1 5 3 7", "2 7"])
    assert g.edges.tolist() == [[0, 1], [1, 2]]


def test_load_graph_by_suffix(tmp_path):
    path = tmp_path / "tri.graph"
    path.write_text("3 3\n2 3\n1 3\n1 2\n")
    assert detect_format(path) == "metis"
    g, _ = load_graph(path)
    assert g.m == 3

    mtx = tmp_path / "path.mtx"
    mtx.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n2 1\n3 2\n")
    g, _ = load_graph(mtx)
    assert g.n == 3
    assert g.edges.tolist() == [[0, 1], [1, 2]]


def test_write_edge_list_round_trip():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4), (0, 4)])
    buf = io.StringIO()
    write_edge_list(g, buf)
    again, _ = parse_edge_list(buf.getvalue().splitlines())
    assert again.same_structure(g)


def test_out_of_range_vertex():
    with pytest.raises(GraphFormatError):
        Graph.from_edges(2, [(0, 2)])


def test_preprocess_keeps_core_of_largest_component():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (5, 6)])
    result = preprocess(g)
    assert result.graph.n == 3
    assert result.graph.m == 3
    assert result.mapping.tolist() == [0, 1, 2]
    assert result.removed_components == 1
    assert result.peeled == 2


def test_preprocess_relabels_survivors():
    g = Graph.from_edges(6, [(0, 5), (2, 3), (3, 4), (4, 2), (1, 2)])
    result = preprocess(g)
    assert result.mapping.tolist() == [2, 3, 4]
    assert result.graph.edges.tolist() == [[0, 1], [0, 2], [1, 2]]


def test_preprocess_of_forest_fails():
    with pytest.raises(EmptyGraphError):
        preprocess(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


def test_degrees_agree_with_networkx():
    nxg = nx.gnm_random_graph(40, 90, seed=5)
    g = Graph.from_edges(40, nxg.edges())
    assert g.degree.tolist() == [nxg.degree(v) for v in range(40)]
    for v in range(40):
        assert sorted(nxg.neighbors(v)) == g.neighbors(v).tolist()


@pytest.mark.skipif(not benchmark_path("netscience").exists(), reason="netscience benchmark file not fetched")
def test_netscience_core_size():
    g, _ = load_graph(benchmark_path("netscience"))
    core = preprocess(g).graph
    assert (core.n, core.m) == (352, 887)
