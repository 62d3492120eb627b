"""
Crossing and co-crossing counts.

Two edges cross when they share no endpoint and their open segments
intersect. All counts are exact: orientation signs come from the filtered
predicates in geometry.predicates.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from common.errors import UsageError
from crossings.sweep import intersecting_pairs
from geometry.predicates import intersect_coords, orient_signs
from graph_model.drawing import Drawing

logger = logging.getLogger(__name__)

CELLS_PER_BLOCK = 2_000_000


@dataclass(frozen=True, eq=False)
class CrossingTally:
    """Total crossings and Cr(d, v) for every vertex v."""

    total: int
    per_vertex: np.ndarray
    consistent: bool


def cross_pair(d: Drawing, e: int, f: int) -> int:
    """1 if edges e and f cross, else 0. Adjacent edges never cross."""
    if e == f:
        raise UsageError("cross_pair needs two distinct edges")
    edges = d.graph.edges
    if set(edges[e].tolist()) & set(edges[f].tolist()):
        return 0
    coords = d.edge_coords()
    return int(intersect_coords(tuple(coords[e]), tuple(coords[f]), proper=True))


def crossing_pairs(d: Drawing, workers: int = 1) -> np.ndarray:
    """(k, 2) array of crossing edge id pairs, sorted."""
    pairs = intersecting_pairs(d.edge_coords(), proper=True, workers=workers)
    if pairs.shape[0] == 0:
        return pairs
    ends_e = d.graph.edges[pairs[:, 0]]
    ends_f = d.graph.edges[pairs[:, 1]]
    adjacent = (
        (ends_e[:, 0] == ends_f[:, 0]) | (ends_e[:, 0] == ends_f[:, 1])
        | (ends_e[:, 1] == ends_f[:, 0]) | (ends_e[:, 1] == ends_f[:, 1])
    )
    return pairs[~adjacent]


def count_all(d: Drawing, workers: int = 1) -> CrossingTally:
    """
    Count every crossing of the drawing.

    Args:
        d: Drawing
        workers: Thread count for the sweep

    Returns:
        CrossingTally with the total and the per-vertex counts
    """
    pairs = crossing_pairs(d, workers)
    per_vertex = np.zeros(d.graph.n, dtype=np.int64)
    if pairs.shape[0]:
        ends = np.concatenate([d.graph.edges[pairs[:, 0]], d.graph.edges[pairs[:, 1]]], axis=1)
        np.add.at(per_vertex, ends.reshape(-1), 1)
    total = int(pairs.shape[0])
    consistent = int(per_vertex.sum()) == 4 * total
    if not consistent:
        logger.warning("per-vertex tally %d != 4 * %d", int(per_vertex.sum()), total)
    return CrossingTally(total=total, per_vertex=per_vertex, consistent=consistent)


def _edge_ids(d: Drawing, edges: Optional[Iterable[int]]) -> np.ndarray:
    if edges is None:
        return np.arange(d.graph.m, dtype=np.int64)
    return np.unique(np.asarray(list(edges), dtype=np.int64))


def _neighbor_ids(d: Drawing, v: int, neighbors: Optional[Iterable[int]]) -> np.ndarray:
    adjacency = d.graph.adjacency[v]
    if neighbors is None:
        return adjacency
    chosen = np.asarray(list(neighbors), dtype=np.int64)
    if not np.isin(chosen, adjacency).all():
        raise UsageError(f"neighbors {chosen.tolist()} are not all adjacent to vertex {v}")
    return chosen


def _count_block(points: np.ndarray, ux: float, uy: float,
                 A: np.ndarray, B: np.ndarray, o2: np.ndarray) -> np.ndarray:
    px = points[:, 0][:, None]
    py = points[:, 1][:, None]
    ax, ay, bx, by = A[:, 0][None, :], A[:, 1][None, :], B[:, 0][None, :], B[:, 1][None, :]
    o1 = orient_signs(ax, ay, bx, by, px, py)
    o3 = orient_signs(px, py, ux, uy, ax, ay)
    o4 = orient_signs(px, py, ux, uy, bx, by)
    hit = (o1 * o2[None, :] < 0) & (o3 * o4 < 0)
    return hit.sum(axis=1)


def count_vertex_at_many(d: Drawing, v: int, points, edges: Optional[Iterable[int]] = None,
                         neighbors: Optional[Iterable[int]] = None, workers: int = 1) -> np.ndarray:
    """
    Cr(d, v) with v placed at each of several positions.

    Args:
        d: Drawing (not modified)
        v: Vertex to place
        points: (k, 2) candidate positions
        edges: Edge ids to count against (default: all edges)
        neighbors: Restrict the counted incident edges to v-u for these u
        workers: Thread count over blocks of candidates

    Returns:
        (k,) int array of crossing counts
    """
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    counts = np.zeros(points.shape[0], dtype=np.int64)
    if points.shape[0] == 0:
        return counts
    edge_ids = _edge_ids(d, edges)
    if edge_ids.shape[0] == 0:
        return counts
    ends = d.graph.edges[edge_ids]
    pos = d.positions

    for u in _neighbor_ids(d, v, neighbors).tolist():
        mask = (ends[:, 0] != u) & (ends[:, 1] != u) & (ends[:, 0] != v) & (ends[:, 1] != v)
        if not mask.any():
            continue
        A = pos[ends[mask, 0]]
        B = pos[ends[mask, 1]]
        ux, uy = float(pos[u, 0]), float(pos[u, 1])
        o2 = orient_signs(A[:, 0], A[:, 1], B[:, 0], B[:, 1], ux, uy)
        block = max(1, CELLS_PER_BLOCK // A.shape[0])
        starts = list(range(0, points.shape[0], block))

        def run(start, A=A, B=B, ux=ux, uy=uy, o2=o2, block=block):
            return _count_block(points[start:start + block], ux, uy, A, B, o2)

        if workers > 1 and len(starts) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(run, starts))
        else:
            parts = [run(s) for s in starts]
        counts += np.concatenate(parts)
    return counts


def count_vertex_at(d: Drawing, v: int, p, edges: Optional[Iterable[int]] = None,
                    neighbors: Optional[Iterable[int]] = None) -> int:
    """Crossings of v's edges with the given edges when v is placed at p."""
    return int(count_vertex_at_many(d, v, [p], edges=edges, neighbors=neighbors)[0])


def crossed_per_neighbor(d: Drawing, v: int, p=None, edges: Optional[Iterable[int]] = None) -> dict:
    """|crossed(uv)| restricted to edges, for every neighbor u, with v at p."""
    p = d.positions[v] if p is None else p
    return {
        u: count_vertex_at(d, v, p, edges=edges, neighbors=[u])
        for u in d.graph.adjacency[v].tolist()
    }


def co_crossing(d: Drawing, v: int, p=None) -> int:
    """
    Co-crossing number of v: pairs (uv, e), e != uv, that do not cross.

    Args:
        d: Drawing
        v: Vertex
        p: Position of v (default: its current position)

    Returns:
        deg(v) * (m - 1) minus the crossings on v's edges
    """
    crossed = crossed_per_neighbor(d, v, p)
    m = d.graph.m
    return sum(m - 1 - c for c in crossed.values())


def estimate_co_crossing(d: Drawing, v: int, p, sample: Sequence[int]) -> float:
    """
    Sample estimate of the co-crossing number at p.

    lambda(p) = |E| * sum_u |coCrEdge(uv, p) & S| / |S| with one shared
    sample S for every neighbor u.
    """
    sample = np.unique(np.asarray(list(sample), dtype=np.int64))
    if sample.shape[0] == 0:
        raise UsageError("estimate_co_crossing needs a nonempty sample")
    incident = d.graph.incident[v]
    total = 0
    for u, eid in zip(d.graph.adjacency[v].tolist(), incident.tolist()):
        in_sample = sample.shape[0] - int(np.isin(eid, sample))
        crossed = count_vertex_at(d, v, p, edges=sample, neighbors=[u])
        total += in_sample - crossed
    return d.graph.m * total / sample.shape[0]
