import numpy as np
import pytest

from common.errors import DegenerateGeometryError, DrawingFormatError
from crossings.crossing_count import count_all
from geometry.primitives import Point
from graph_model.drawing import (
    Drawing,
    concurrent_crossing_vertices,
    ensure_general_position,
    find_degenerate_vertices,
    movement_square,
)
from graph_model.drawing_io import read_drawing, write_drawing
from graph_model.graph import Graph
from graph_model.svg_export import SvgOptions, to_svg


def test_position_count_must_match():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    with pytest.raises(DrawingFormatError):
        Drawing(g, np.zeros((2, 2)))
    with pytest.raises(DrawingFormatError):
        Drawing(g, np.array([[0, 0], [1, np.nan], [2, 2]]))


def test_movement_square_doubles_the_enclosing_square():
    g = Graph.from_edges(2, [(0, 1)])
    box = movement_square(Drawing(g, np.array([[0.0, 0.0], [2.0, 1.0]])))
    assert box.min_corner == Point(-1.0, -1.5)
    assert box.max_corner == Point(3.0, 2.5)


def test_movement_square_of_single_vertex():
    g = Graph.from_edges(1, [])
    box = movement_square(Drawing(g, np.array([[3.0, 4.0]])))
    assert (box.width, box.height) == (1.0, 1.0)
    assert box.center == Point(3.0, 4.0)


def test_edge_coords_are_lexicographic(square_k4):
    coords = square_k4.edge_coords()
    for row in coords.tolist():
        assert (row[0], row[1]) < (row[2], row[3])


def test_degenerate_vertices():
    g = Graph.from_edges(3, [(0, 1)])
    on_edge = Drawing(g, np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]]))
    assert find_degenerate_vertices(on_edge) == [2]
    coincident = Drawing(g, np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 0.0]]))
    assert find_degenerate_vertices(coincident) == [0, 2]


def test_ensure_general_position_jitters_offenders(rng):
    g = Graph.from_edges(3, [(0, 1)])
    d = Drawing(g, np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]]))
    before = d.positions.copy()
    moved = ensure_general_position(d, rng)
    assert moved >= 1
    assert find_degenerate_vertices(d) == []
    assert np.abs(d.positions - before).max() <= 1e-9 * np.hypot(2.0, 0.0) + 1e-15


def test_ensure_general_position_gives_up():
    g = Graph.from_edges(3, [(0, 1)])
    d = Drawing(g, np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(DegenerateGeometryError):
        ensure_general_position(d, np.random.default_rng(0), max_retries=0)


def test_three_edges_through_one_point(rng):
    g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    d = Drawing(g, np.array([[-2.0, -1.0], [2.0, 1.0], [-2.0, 1.0], [2.0, -1.0], [0.0, -2.0], [0.0, 2.0]]))
    offenders = concurrent_crossing_vertices(d)
    assert offenders
    assert find_degenerate_vertices(d) == offenders
    assert ensure_general_position(d, rng) >= 1
    assert find_degenerate_vertices(d) == []
    assert count_all(d).total == 3


def test_two_crossings_on_one_edge_are_fine():
    g = Graph.from_edges(6, [(0, 1), (2, 3), (4, 5)])
    d = Drawing(g, np.array([[0.0, 0.0], [4.0, 0.0], [1.0, -1.0], [1.0, 1.0], [3.0, -1.0], [3.0, 1.0]]))
    assert concurrent_crossing_vertices(d) == []


@pytest.mark.parametrize("suffix", [".json", ".csv"])
def test_drawing_files_are_bit_identical(tmp_path, suffix):
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    d = Drawing(g, np.array([[0.1, 1.0 / 3.0], [1e-300, -2.5], [123456.789, np.pi], [-0.0, 7.0]]))
    path = tmp_path / f"d{suffix}"
    write_drawing(d, path)
    again = read_drawing(path, g)
    assert again.positions.tobytes() == d.positions.tobytes()


def test_drawing_file_errors(tmp_path):
    g = Graph.from_edges(2, [(0, 1)])
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(DrawingFormatError):
        read_drawing(bad, g)
    short = tmp_path / "short.json"
    short.write_text('{"positions": [[0, 0]]}')
    with pytest.raises(DrawingFormatError):
        read_drawing(short, g)
    with pytest.raises(DrawingFormatError):
        read_drawing(short, g, fmt="xml")


def test_svg_contains_every_element(square_k4):
    text = to_svg(square_k4)
    assert text.startswith("<svg")
    assert text.count("<line") == 6
    assert text.count("<circle") == 4
    marked = to_svg(square_k4, SvgOptions(show_crossings=True))
    assert marked.count("<rect") == 1
