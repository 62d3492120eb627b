import json

import numpy as np
import pytest

from common.errors import ArrangementError
from conftest import complete_edges, convex_positions, random_graph_drawing
from crossings.crossing_count import count_all, count_vertex_at_many
from data_generation.generate_graphs import random_regular_graph
from graph_model.drawing import Drawing, find_degenerate_vertices, movement_square
from graph_model.graph import Graph
from movement import mover
from movement.config import MoveConfig, Strategy, named_config
from movement.mover import _neighbor_groups, minimize, move_vertex, order_vertices
from oracles import grid_minimum
from stress_layout.stress import StressParams, stress_layout

EXACT = MoveConfig(samples=None, points=50, degree_cap=float("inf"), strategy=Strategy.RESTRICTED)


def test_order_is_by_crossings_then_id(square_k4, random_drawing):
    assert order_vertices(square_k4) == [0, 1, 2, 3]
    tally = count_all(random_drawing)
    order = order_vertices(random_drawing, tally)
    per = tally.per_vertex[order]
    assert (np.diff(per) <= 0).all()
    assert sorted(order) == list(range(random_drawing.graph.n))


def test_square_vertex_moves_off_the_diagonal(square_k4, rng):
    rec = move_vertex(square_k4, 3, EXACT, rng)
    assert rec.accepted
    assert (rec.old_crossings, rec.new_crossings) == (1, 0)
    assert count_all(square_k4).total == 0
    assert square_k4.position(3) == rec.new_position


def test_exact_move_beats_a_grid_search(random_drawing, rng):
    d = random_drawing
    v = order_vertices(d)[0]
    best_on_grid = grid_minimum(d.positions, d.graph.edges, v, movement_square(d), resolution=15)
    rec = move_vertex(d, v, EXACT, rng)
    assert rec.new_crossings <= best_on_grid
    assert rec.new_crossings <= rec.old_crossings


@pytest.mark.parametrize("seed", range(20))
def test_full_sample_move_beats_random_positions(seed):
    d = random_graph_drawing(100 + seed)
    v = order_vertices(d)[0]
    square = movement_square(d)
    low, high = [square.xmin, square.ymin], [square.xmax, square.ymax]
    candidates = np.random.default_rng(seed).uniform(low, high, size=(10_000, 2))
    best_random = int(count_vertex_at_many(d, v, candidates).min())
    rec = move_vertex(d.copy(), v, EXACT, np.random.default_rng(seed))
    assert rec.new_crossings <= best_random


def test_rejected_move_keeps_the_position(rng):
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    d = Drawing(g, np.array([[0.0, 0.0], [1.0, 0.5], [2.0, 0.0]]))
    rec = move_vertex(d, 1, EXACT, rng)
    assert not rec.accepted
    assert rec.new_position == rec.old_position


def test_isolated_vertex_is_skipped(rng):
    g = Graph.from_edges(3, [(0, 1)])
    d = Drawing(g, np.array([[0.0, 0.0], [1.0, 0.5], [2.0, 0.0]]))
    rec = move_vertex(d, 2, EXACT, rng)
    assert (rec.accepted, rec.candidates) == (False, 0)


@pytest.mark.parametrize("strategy", ["restricted", "weighted", "primal"])
def test_minimize_never_increases(random_drawing, strategy):
    cfg = MoveConfig(samples=20, points=30, strategy=strategy, passes=2, seed=5)
    final, report = minimize(random_drawing, cfg)
    assert report.violations() == []
    assert report.cr_after <= report.cr_before
    assert report.cr_after == count_all(final).total
    assert all(p.consistent for p in report.passes)
    assert len(report.moves) == 2 * random_drawing.graph.n


def test_minimize_leaves_input_untouched(random_drawing):
    before = random_drawing.positions.copy()
    minimize(random_drawing, MoveConfig(samples=10, points=5))
    assert np.array_equal(random_drawing.positions, before)


def test_minimize_jitters_a_degenerate_start(monkeypatch):
    jitters = []
    real = mover.ensure_general_position

    def recording(d, rng):
        jitters.append(real(d, rng))
        return jitters[-1]

    monkeypatch.setattr(mover, "ensure_general_position", recording)
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    # vertex 2 sits on edge 0-1
    d = Drawing(g, np.array([[0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 1.0]]))
    before = d.positions.copy()
    final, report = minimize(d, EXACT)
    assert jitters[0] >= 1
    assert np.array_equal(d.positions, before)
    assert report.violations() == []
    assert report.cr_after == count_all(final).total == 0
    assert find_degenerate_vertices(final) == []


def test_same_seed_same_result(random_drawing):
    cfg = MoveConfig(samples=15, points=20, strategy="weighted", seed=11)
    a, _ = minimize(random_drawing, cfg)
    b, _ = minimize(random_drawing, cfg)
    assert np.array_equal(a.positions, b.positions)


def test_report_serializes(random_drawing):
    _, report = minimize(random_drawing, named_config("R0").with_overrides(points=10))
    data = json.loads(json.dumps(report.to_dict()))
    assert data["config"]["degree_cap"] is None
    assert data["config"]["strategy"] == "primal"
    assert data["cr_before"] >= data["cr_after"]


def test_degree_cap_splits_neighbors(rng):
    g = Graph.from_edges(8, [(0, i) for i in range(1, 8)])
    d = Drawing(g, convex_positions(8, jitter=0.1, seed=1))
    groups = _neighbor_groups(d, 0, 3, rng)
    assert [len(x) for x in groups] == [3, 3, 1]
    assert sorted(np.concatenate(groups).tolist()) == list(range(1, 8))
    assert _neighbor_groups(d, 0, float("inf"), rng) == [None]


def test_arrangement_failure_falls_back_to_primal(square_k4, rng, monkeypatch):
    def broken(*args, **kwargs):
        raise ArrangementError("broken arrangement")

    monkeypatch.setattr(mover, "crossing_minimal_region", broken)
    rec = move_vertex(square_k4, 3, EXACT, rng)
    assert rec.fallback
    assert rec.candidates == EXACT.points
    assert rec.new_crossings <= rec.old_crossings


def test_convex_k5_gets_down_to_three():
    g = Graph.from_edges(5, complete_edges(5))
    d = Drawing(g, convex_positions(5, jitter=0.1, seed=2))
    final, report = minimize(d, EXACT.with_overrides(passes=3))
    assert report.cr_before == 5
    assert report.cr_after <= 3
    assert count_all(final).total == report.cr_after


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 6])
def test_regular_graph_crossings_drop(k):
    g = random_regular_graph(k, 60, seed=1)
    d = stress_layout(g, StressParams(seed=1))
    _, report = minimize(d, named_config("S512").with_overrides(passes=2))
    assert report.violations() == []
    assert report.cr_after < report.cr_before
