"""
Straight-line drawings.

A Drawing pairs a Graph with one finite position per vertex. The mover
mutates positions in place through set_position(); everything else treats
drawings as values and works on copies.
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from common.errors import DegenerateGeometryError, DrawingFormatError
from crossings.sweep import intersecting_pairs
from geometry.predicates import crossing_order, orient_signs
from geometry.primitives import BoundingBox, Point
from graph_model.graph import Graph

logger = logging.getLogger(__name__)

JITTER_SCALE = 1e-9
MAX_JITTER_RETRIES = 10
# crossings closer than this along an edge are compared exactly
CONCURRENCY_GAP = 1e-9


@dataclass(eq=False)
class Drawing:
    graph: Graph
    positions: np.ndarray

    def __post_init__(self):
        positions = np.array(self.positions, dtype=np.float64).reshape(-1, 2)
        if positions.shape[0] != self.graph.n:
            raise DrawingFormatError(
                f"drawing has {positions.shape[0]} positions for a graph with {self.graph.n} vertices"
            )
        if not np.isfinite(positions).all():
            raise DrawingFormatError("drawing contains non-finite coordinates")
        self.positions = positions

    def position(self, v: int) -> Point:
        return Point(self.positions[v, 0], self.positions[v, 1])

    def set_position(self, v: int, p) -> None:
        p = Point(p[0], p[1])
        self.positions[v, 0] = p[0]
        self.positions[v, 1] = p[1]

    def copy(self) -> "Drawing":
        return Drawing(self.graph, self.positions.copy())

    def edge_coords(self) -> np.ndarray:
        """(m, 4) array of lexicographically directed edge segments."""
        if self.graph.m == 0:
            return np.zeros((0, 4))
        a = self.positions[self.graph.edges[:, 0]]
        b = self.positions[self.graph.edges[:, 1]]
        swap = (b[:, 0] < a[:, 0]) | ((b[:, 0] == a[:, 0]) & (b[:, 1] < a[:, 1]))
        src = np.where(swap[:, None], b, a)
        dst = np.where(swap[:, None], a, b)
        return np.hstack([src, dst])


def bounds(d: Drawing):
    """(xmin, ymin, xmax, ymax) of the vertex positions."""
    lo = d.positions.min(axis=0)
    hi = d.positions.max(axis=0)
    return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])


def movement_square(d: Drawing) -> BoundingBox:
    """
    Sampling and clipping domain of the mover.

    Same center as the smallest axis-aligned square containing the drawing,
    twice its side; a single-point drawing gets a unit square.
    """
    if d.graph.n == 0:
        raise DrawingFormatError("movement square of an empty drawing")
    xmin, ymin, xmax, ymax = bounds(d)
    side = max(xmax - xmin, ymax - ymin)
    cx, cy = (xmin + xmax) / 2.0, (ymin + ymax) / 2.0
    half = side if side > 0 else 0.5
    return BoundingBox(Point(cx - half, cy - half), Point(cx + half, cy + half))


def find_degenerate_vertices(d: Drawing) -> List[int]:
    """
    Vertices violating general position.

    Reports both vertices of every coincident pair, every vertex lying on
    a closed edge it is not incident to, and one endpoint of an edge passing
    through the crossing of two others.
    """
    offenders = set()
    pos = d.positions
    if d.graph.n == 0:
        return []

    _, inverse, counts = np.unique(pos, axis=0, return_inverse=True, return_counts=True)
    inverse = np.asarray(inverse).reshape(-1)
    offenders.update(np.flatnonzero(counts[inverse] > 1).tolist())

    edges = d.graph.edges
    if edges.shape[0]:
        a = pos[edges[:, 0]]
        b = pos[edges[:, 1]]
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        chunk = max(1, 200_000 // max(1, edges.shape[0]))
        for start in range(0, d.graph.n, chunk):
            vs = np.arange(start, min(d.graph.n, start + chunk))
            p = pos[vs]
            px, py = p[:, 0][:, None], p[:, 1][:, None]
            inside = (
                (px >= lo[:, 0]) & (px <= hi[:, 0]) & (py >= lo[:, 1]) & (py <= hi[:, 1])
            )
            incident = (vs[:, None] == edges[:, 0]) | (vs[:, None] == edges[:, 1])
            candidates = inside & ~incident
            if not candidates.any():
                continue
            rows, cols = np.nonzero(candidates)
            signs = orient_signs(a[cols, 0], a[cols, 1], b[cols, 0], b[cols, 1], p[rows, 0], p[rows, 1])
            offenders.update(vs[rows[signs == 0]].tolist())
    if not offenders:
        offenders.update(concurrent_crossing_vertices(d))
    return sorted(offenders)


def concurrent_crossing_vertices(d: Drawing) -> List[int]:
    """
    Vertices to jitter so that no three edges cross in one point.

    Crossings are ordered along each edge by their float parameter; neighbors
    in that order that are close are compared with the exact predicate.
    """
    if d.graph.m < 3:
        return []
    coords = d.edge_coords()
    pairs = intersecting_pairs(coords, proper=True)
    if pairs.shape[0] < 2:
        return []
    on = np.concatenate([pairs[:, 0], pairs[:, 1]])
    other = np.concatenate([pairs[:, 1], pairs[:, 0]])
    s, f = coords[on], coords[other]
    ds = s[:, 2:] - s[:, :2]
    df = f[:, 2:] - f[:, :2]
    w = f[:, :2] - s[:, :2]
    t = (w[:, 0] * df[:, 1] - w[:, 1] * df[:, 0]) / (ds[:, 0] * df[:, 1] - ds[:, 1] * df[:, 0])

    order = np.lexsort((t, on))
    on, other, t = on[order], other[order], t[order]
    close = np.flatnonzero((on[1:] == on[:-1]) & (np.abs(t[1:] - t[:-1]) <= CONCURRENCY_GAP))
    offenders = set()
    for k in close.tolist():
        e, f1, f2 = int(on[k]), int(other[k]), int(other[k + 1])
        if crossing_order(tuple(coords[e]), tuple(coords[f1]), tuple(coords[f2])) == 0:
            offenders.add(int(d.graph.edges[max(f1, f2)].min()))
    return sorted(offenders)


def ensure_general_position(d: Drawing, rng: np.random.Generator,
                            max_retries: int = MAX_JITTER_RETRIES) -> int:
    """
    Jitter degenerate vertices until the drawing is in general position.

    Args:
        d: Drawing, modified in place
        rng: Random generator for the offsets
        max_retries: Number of jitter rounds before giving up

    Returns:
        Total number of vertex jitters applied
    """
    jittered = 0
    for attempt in range(max_retries + 1):
        offenders = find_degenerate_vertices(d)
        if not offenders:
            if jittered:
                logger.warning("general position restored after %d jitters", jittered)
            return jittered
        if attempt == max_retries:
            break
        xmin, ymin, xmax, ymax = bounds(d)
        diagonal = float(np.hypot(xmax - xmin, ymax - ymin)) or 1.0
        radius = JITTER_SCALE * diagonal * rng.random(len(offenders))
        angle = rng.uniform(0.0, 2.0 * np.pi, len(offenders))
        d.positions[offenders, 0] += radius * np.cos(angle)
        d.positions[offenders, 1] += radius * np.sin(angle)
        jittered += len(offenders)
        logger.debug("jitter round %d moved %d vertices", attempt + 1, len(offenders))
    raise DegenerateGeometryError(
        f"drawing still degenerate after {max_retries} jitter rounds ({len(offenders)} vertices)"
    )
