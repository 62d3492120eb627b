"""
Crossing counts per face of the bloated dual.

One face per connected part of the arrangement is counted directly; every
other face gets its count by breadth-first propagation across sub-pieces,
adding the crossed atom's delta. The outside of the box carries no count.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from arrangement.bloated_dual import BloatedDual, arrangement_for_vertex
from arrangement.face_polygon import FacePolygon, extract_face_polygon
from common.errors import ArrangementConsistencyError, GeometryError
from crossings.crossing_count import count_vertex_at
from geometry.primitives import BoundingBox
from graph_model.drawing import Drawing, movement_square
from region_search.sampling import interior_point

logger = logging.getLogger(__name__)

NO_COUNT = -1


@dataclass(frozen=True, eq=False)
class FaceCounts:
    """Crossing count per face cycle; face ids are the dual's cycle ids."""

    face_of: np.ndarray
    counts: np.ndarray
    exterior_face: int
    seed_face: int
    seed_count: int
    min_count: int
    max_count: int

    @property
    def n_faces(self) -> int:
        return self.counts.shape[0]

    @property
    def interior(self) -> np.ndarray:
        mask = np.ones(self.n_faces, dtype=bool)
        mask[self.exterior_face] = False
        return mask

    def count_at_vertex(self, dual_vertex: int) -> int:
        return int(self.counts[self.face_of[dual_vertex]])


@dataclass(frozen=True, eq=False)
class MinimalRegion:
    dual: BloatedDual
    counts: FaceCounts
    faces: List[Tuple[int, int]]


def seed_count(d: Drawing, v: int, polygon, obstacles: Iterable[int],
               neighbors: Optional[Iterable[int]] = None) -> int:
    """
    Direct crossing count of v placed inside a face.

    Args:
        d: Drawing
        v: Moving vertex
        polygon: Face polygon (counterclockwise outer cycle)
        obstacles: Obstacle edge ids of the arrangement
        neighbors: Neighbor subset the arrangement was built for

    Returns:
        Crossings of the chosen edges v-u with the obstacles
    """
    p = interior_point(polygon)
    return count_vertex_at(d, v, p, edges=obstacles, neighbors=neighbors)


def _cross_edges(dual: BloatedDual):
    labels = dual.face_cycles
    sub = np.arange(dual.n_subpieces)
    right = labels[2 * sub]
    left = labels[2 * sub + 1]
    atom_delta = np.array([a.crossing_delta for a in dual.atoms], dtype=np.int64)
    delta = atom_delta[dual.subpiece_atom]
    ext = dual.exterior_cycle
    keep = (right != ext) & (left != ext)
    return right[keep], left[keep], delta[keep]


def _cycle_graph(n: int, right: np.ndarray, left: np.ndarray):
    ones = np.ones(right.shape[0], dtype=np.int8)
    return coo_matrix((ones, (right, left)), shape=(n, n)).tocsr()


def propagate_counts(dual: BloatedDual, seed_face: int, seed: int,
                     more_seeds: Optional[Mapping[int, int]] = None) -> FaceCounts:
    """
    Counts for every face by breadth-first search from seeded faces.

    Args:
        dual: Bloated dual
        seed_face: Face (cycle id) with a known count
        seed: Its crossing count
        more_seeds: Known counts of faces in other connected parts

    Returns:
        FaceCounts; the exterior face carries -1

    Raises:
        ArrangementConsistencyError: If a count turns negative, a face stays
            unreached, or two paths disagree on a face's count
    """
    n = dual.n_cycles
    ext = dual.exterior_cycle
    if seed_face == ext:
        raise ArrangementConsistencyError("the outside of the box cannot be a seed face")
    right, left, delta = _cross_edges(dual)
    graph = _cycle_graph(n, right, left)
    step: Dict[Tuple[int, int], int] = {}
    for a, b, dl in zip(right.tolist(), left.tolist(), delta.tolist()):
        step.setdefault((a, b), dl)
        step.setdefault((b, a), -dl)

    counts = np.full(n, NO_COUNT, dtype=np.int64)
    seeds = {int(seed_face): int(seed)}
    seeds.update({int(f): int(c) for f, c in (more_seeds or {}).items()})
    for face, value in seeds.items():
        if counts[face] != NO_COUNT:
            continue
        if value < 0:
            raise ArrangementConsistencyError(f"negative seed count {value}")
        counts[face] = value
        order, pred = breadth_first_order(graph, face, directed=False, return_predecessors=True)
        for c in order[1:].tolist():
            p = int(pred[c])
            counts[c] = counts[p] + step[(p, c)]
            if counts[c] < 0:
                raise ArrangementConsistencyError(f"face {c} reached a negative count {counts[c]}")

    unreached = np.flatnonzero(counts == NO_COUNT)
    unreached = unreached[unreached != ext]
    if unreached.shape[0]:
        raise ArrangementConsistencyError(f"{unreached.shape[0]} faces are not reachable from the seeds")
    bad = counts[left] - counts[right] != delta
    if bad.any():
        raise ArrangementConsistencyError(f"{int(bad.sum())} sub-pieces disagree with the propagated counts")

    counts[ext] = NO_COUNT
    inner = np.delete(counts, ext)
    return FaceCounts(
        face_of=dual.face_cycles,
        counts=counts,
        exterior_face=ext,
        seed_face=int(seed_face),
        seed_count=int(seed),
        min_count=int(inner.min()) if inner.shape[0] else 0,
        max_count=int(inner.max()) if inner.shape[0] else 0,
    )


def _seed_polygon(dual: BloatedDual, component: np.ndarray) -> FacePolygon:
    reps = dual.cycle_representatives()
    for face in component.tolist():
        polygon = extract_face_polygon(dual, int(reps[face]))
        if not polygon.is_hole_cycle:
            try:
                interior_point(polygon)
            except GeometryError:
                continue
            return polygon
    raise ArrangementConsistencyError("no countable face in a connected part of the arrangement")


def count_faces(d: Drawing, v: int, dual: BloatedDual, obstacles: Iterable[int],
                neighbors: Optional[Iterable[int]] = None) -> FaceCounts:
    """
    Seed every connected part of the arrangement and propagate.

    The arrangement of one neighbor group is connected through the box walls,
    so normally a single seed is counted directly.
    """
    obstacle_ids = sorted(set(int(e) for e in obstacles))
    group = None if neighbors is None else [int(u) for u in neighbors]
    n = dual.n_cycles
    ext = dual.exterior_cycle
    right, left, _ = _cross_edges(dual)
    n_parts, part = connected_components(_cycle_graph(n, right, left), directed=False)
    seeds: Dict[int, int] = {}
    for label in range(n_parts):
        component = np.flatnonzero(part == label)
        if component.shape[0] == 1 and component[0] == ext:
            continue
        polygon = _seed_polygon(dual, component[component != ext])
        seeds[polygon.cycle] = seed_count(d, v, polygon, obstacle_ids, group)
    if not seeds:
        raise ArrangementConsistencyError("arrangement has no interior face")
    first = min(seeds)
    rest = {f: c for f, c in seeds.items() if f != first}
    if rest:
        logger.debug("vertex %d: %d extra seeds for disconnected parts", v, len(rest))
    return propagate_counts(dual, first, seeds[first], rest)


def min_faces(counts: FaceCounts) -> List[Tuple[int, int]]:
    """All interior faces with the minimum count, by face id."""
    ids = np.flatnonzero(counts.interior & (counts.counts == counts.min_count))
    return [(int(f), counts.min_count) for f in ids.tolist()]


def crossing_minimal_region(d: Drawing, v: int, obstacles: Optional[Iterable[int]] = None,
                            box: Optional[BoundingBox] = None,
                            neighbors: Optional[Iterable[int]] = None,
                            workers: int = 1) -> MinimalRegion:
    """
    Arrangement, face counts and minimal faces for one vertex.

    Args:
        d: Drawing
        v: Vertex to move
        obstacles: Obstacle edges (default: every edge)
        box: Arrangement box (default: the movement square)
        neighbors: Neighbor subset (default N(v))
        workers: Worker count

    Returns:
        MinimalRegion
    """
    obstacle_ids = list(range(d.graph.m)) if obstacles is None else sorted(set(int(e) for e in obstacles))
    box = movement_square(d) if box is None else box
    dual = arrangement_for_vertex(d, v, obstacle_ids, box, neighbors=neighbors, workers=workers)
    counts = count_faces(d, v, dual, obstacle_ids, neighbors=neighbors)
    return MinimalRegion(dual=dual, counts=counts, faces=min_faces(counts))
