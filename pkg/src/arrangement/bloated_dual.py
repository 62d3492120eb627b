"""
Bloated dual of an arrangement of atomic pieces.

Every atom is cut at its events into sub-pieces. Sub-piece k owns two dual
vertices: 2k on its right side and 2k + 1 on its left side (odd = left). The
adjacency lives in one flat array of 3N slots:

    slot 0  the other side of the same sub-piece (cross edge)
    slot 1  the neighbor around the corner at the sub-piece's source end
    slot 2  the neighbor around the corner at the sub-piece's target end

Walking a left vertex towards its target end, or a right vertex towards its
source end, keeps the face on the left; the resulting cycles are the faces'
boundary components. Construction uses ordering predicates only and never
materializes an intersection coordinate.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property, cmp_to_key
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.cluster.hierarchy import DisjointSet
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from arrangement.atomize import AtomicPiece, atomize_overlaps
from arrangement.visibility import arrangement_box, collect_pieces
from common.errors import DegenerateArrangementError, DegenerateGeometryError
from crossings.sweep import intersecting_pairs, segments_to_array
from geometry.predicates import compare_directions, crossing_order, orient_signs, point_vs_crossing
from geometry.primitives import BoundingBox, Point
from graph_model.drawing import Drawing

logger = logging.getLogger(__name__)

SLOT_CROSS = 0
SLOT_SOURCE = 1
SLOT_TARGET = 2
NO_NEIGHBOR = -1
# atoms handed to one worker task when sorting events in parallel
SORT_CHUNK = 256

EventKey = Tuple[Hashable, ...]


@dataclass(frozen=True)
class EventPoint:
    """
    One geometric point where pieces end or cross, kept combinatorially.

    point is set when some piece ends here; otherwise crossing names two
    atoms whose crossing this is. directions lists (sub-piece, sign) pairs
    counterclockwise, sign +1 when the sub-piece leaves through its source.
    """

    point: Optional[Point]
    crossing: Optional[Tuple[int, int]]
    directions: Tuple[Tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return len(self.directions)


@dataclass(frozen=True, eq=False)
class BloatedDual:
    atoms: Tuple[AtomicPiece, ...]
    coords: np.ndarray
    subpiece_atom: np.ndarray
    subpiece_ends: np.ndarray
    adjacency: np.ndarray
    events: Tuple[EventPoint, ...]
    box: BoundingBox
    exterior_vertex: int
    n_pairs: int = 0

    @property
    def n_vertices(self) -> int:
        return self.adjacency.shape[0] // 3

    @property
    def n_subpieces(self) -> int:
        return self.subpiece_atom.shape[0]

    def neighbor(self, v: int, slot: int) -> int:
        return int(self.adjacency[3 * v + slot])

    def next_vertex(self, v: int) -> int:
        """Successor of v on its face cycle."""
        return int(self.adjacency[3 * v + (SLOT_TARGET if v & 1 else SLOT_SOURCE)])

    def atom_of(self, v: int) -> AtomicPiece:
        return self.atoms[int(self.subpiece_atom[v >> 1])]

    def crossing_delta(self, v: int) -> int:
        """Change of the crossing count when crossing from v's side to the other side."""
        delta = self.atom_of(v).crossing_delta
        return -delta if v & 1 else delta

    def corner_event(self, v: int) -> int:
        """Event at the end of v's sub-piece where its face cycle continues."""
        return int(self.subpiece_ends[v >> 1, 1 if v & 1 else 0])

    def next_array(self) -> np.ndarray:
        v = np.arange(self.n_vertices)
        return self.adjacency[3 * v + np.where(v & 1, SLOT_TARGET, SLOT_SOURCE)]

    @cached_property
    def face_cycles(self) -> np.ndarray:
        """Cycle id per dual vertex, numbered by smallest member vertex."""
        nxt = self.next_array()
        n = nxt.shape[0]
        if np.unique(nxt).shape[0] != n:
            raise DegenerateArrangementError("face successor map is not a permutation")
        graph = coo_matrix((np.ones(n, dtype=np.int8), (np.arange(n), nxt)), shape=(n, n)).tocsr()
        count, labels = connected_components(graph, directed=True, connection="strong")
        _, first = np.unique(labels, return_index=True)
        rank = np.empty(count, dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(count)
        return rank[labels]

    @property
    def n_cycles(self) -> int:
        return int(self.face_cycles.max()) + 1 if self.n_vertices else 0

    @property
    def exterior_cycle(self) -> int:
        return int(self.face_cycles[self.exterior_vertex])

    def cycle(self, start: int) -> List[int]:
        """Dual vertices of the face cycle through start, in walking order."""
        if not 0 <= start < self.n_vertices:
            raise IndexError(f"dual vertex {start} out of range")
        walk = [start]
        v = self.next_vertex(start)
        while v != start:
            walk.append(v)
            v = self.next_vertex(v)
        return walk

    def cycle_representatives(self) -> np.ndarray:
        """Smallest dual vertex of every cycle, indexed by cycle id."""
        labels = self.face_cycles
        _, first = np.unique(labels, return_index=True)
        return first


def _event_comparator(s):
    def compare(e1, e2):
        (k1, g1), (k2, g2) = e1, e2
        if k1[0] == "pt" and k2[0] == "pt":
            return (g1 > g2) - (g1 < g2)
        if k1[0] == "x" and k2[0] == "x":
            return crossing_order(s, g1, g2)
        if k1[0] == "pt":
            return point_vs_crossing(s, g1, g2)
        return -point_vs_crossing(s, g2, g1)

    return compare


def _sort_atom_events(task) -> List[List[EventKey]]:
    """Interior events of one atom, sorted along it and grouped when they coincide."""
    s, events = task
    if not events:
        return []
    compare = _event_comparator(s)
    ordered = sorted(events, key=cmp_to_key(compare))
    groups = [[ordered[0][0]]]
    for prev, cur in zip(ordered, ordered[1:]):
        if compare(prev, cur) == 0:
            groups[-1].append(cur[0])
        else:
            groups.append([cur[0]])
    return groups


def _interior_events(rows: List[Tuple[float, float, float, float]], pairs: np.ndarray):
    events: List[list] = [[] for _ in rows]
    if pairs.shape[0] == 0:
        return events
    coords = np.asarray(rows, dtype=np.float64)
    A = coords[pairs[:, 0]]
    B = coords[pairs[:, 1]]
    o1 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 0], B[:, 1]).tolist()
    o2 = orient_signs(A[:, 0], A[:, 1], A[:, 2], A[:, 3], B[:, 2], B[:, 3]).tolist()
    o3 = orient_signs(B[:, 0], B[:, 1], B[:, 2], B[:, 3], A[:, 0], A[:, 1]).tolist()
    o4 = orient_signs(B[:, 0], B[:, 1], B[:, 2], B[:, 3], A[:, 2], A[:, 3]).tolist()

    for k, (i, j) in enumerate(pairs.tolist()):
        a, b = rows[i], rows[j]
        if o1[k] * o2[k] < 0 and o3[k] * o4[k] < 0:
            key = ("x", i, j)
            events[i].append((key, b))
            events[j].append((key, a))
            continue
        if o1[k] == 0 and o2[k] == 0:
            # collinear atoms only share an endpoint
            continue
        for q, o in (((b[0], b[1]), o1[k]), ((b[2], b[3]), o2[k])):
            if o == 0 and (a[0], a[1]) < q < (a[2], a[3]):
                p = Point(*q)
                events[i].append((("pt", p), p))
        for q, o in (((a[0], a[1]), o3[k]), ((a[2], a[3]), o4[k])):
            if o == 0 and (b[0], b[1]) < q < (b[2], b[3]):
                p = Point(*q)
                events[j].append((("pt", p), p))
    return events


def _sort_all(rows, events, workers: int) -> List[List[List[EventKey]]]:
    tasks = list(zip(rows, events))
    try:
        if workers > 1 and len(tasks) > SORT_CHUNK:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                return list(pool.map(_sort_atom_events, tasks, chunksize=SORT_CHUNK))
        return [_sort_atom_events(t) for t in tasks]
    except DegenerateGeometryError as exc:
        raise DegenerateArrangementError(f"cannot order events along a piece: {exc}") from exc


def _exterior_subpiece(atoms: Sequence[AtomicPiece], first: np.ndarray, box: BoundingBox) -> int:
    corner = box.min_corner
    for i, atom in enumerate(atoms):
        g = atom.geometry
        if g.source == corner and g.target[1] == corner[1]:
            return int(first[i])
    raise DegenerateArrangementError("arrangement has no bottom box wall")


def _bounding_box(rows) -> BoundingBox:
    arr = np.asarray(rows, dtype=np.float64)
    return BoundingBox(
        Point(min(arr[:, 0].min(), arr[:, 2].min()), min(arr[:, 1].min(), arr[:, 3].min())),
        Point(max(arr[:, 0].max(), arr[:, 2].max()), max(arr[:, 1].max(), arr[:, 3].max())),
    )


def build_bloated_dual(atoms: Sequence[AtomicPiece], pairs=None, box: Optional[BoundingBox] = None,
                       workers: int = 1) -> BloatedDual:
    """
    Build the bloated dual of an atomized arrangement.

    Args:
        atoms: Atomic pieces, including the four box walls
        pairs: Intersecting atom index pairs (closed mode); computed when None
        box: The box closed by the walls (default: bounding box of the atoms)
        workers: Process count for sorting events along atoms

    Returns:
        BloatedDual

    Raises:
        DegenerateArrangementError: If events cannot be ordered consistently
    """
    if not atoms:
        raise DegenerateArrangementError("empty arrangement")
    rows = [a.geometry.as_tuple() for a in atoms]
    if pairs is None:
        pairs = intersecting_pairs(segments_to_array([a.geometry for a in atoms]), proper=False, workers=workers)
    pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    box = box if box is not None else _bounding_box(rows)

    events = _interior_events(rows, pairs)
    groups = _sort_all(rows, events, workers)

    classes = DisjointSet()
    for atom in atoms:
        classes.add(("pt", atom.geometry.source))
        classes.add(("pt", atom.geometry.target))
    for atom_groups in groups:
        for group in atom_groups:
            for key in group:
                classes.add(key)
            for key in group[1:]:
                classes.merge(group[0], key)

    event_id: Dict[EventKey, int] = {}
    anchors: List[EventKey] = []

    def event_of(key) -> int:
        root = classes[key]
        if root not in event_id:
            event_id[root] = len(anchors)
            anchors.append(key)
        elif key[0] == "pt" and anchors[event_id[root]][0] != "pt":
            anchors[event_id[root]] = key
        return event_id[root]

    counts = np.array([len(g) + 1 for g in groups], dtype=np.int64)
    first = np.concatenate([[0], np.cumsum(counts)[:-1]]).astype(np.int64)
    n_sub = int(counts.sum())
    subpiece_atom = np.repeat(np.arange(len(atoms), dtype=np.int64), counts)
    subpiece_ends = np.empty((n_sub, 2), dtype=np.int64)

    for i, atom in enumerate(atoms):
        chain = [event_of(("pt", atom.geometry.source))]
        for group in groups[i]:
            ids = {event_of(key) for key in group}
            if len(ids) != 1:
                raise DegenerateArrangementError(f"coincident events on atom {i} fall into different classes")
            chain.append(ids.pop())
        chain.append(event_of(("pt", atom.geometry.target)))
        if len(set(chain)) != len(chain):
            raise DegenerateArrangementError(f"atom {i} meets the same event point twice")
        k0 = int(first[i])
        subpiece_ends[k0:k0 + len(chain) - 1, 0] = chain[:-1]
        subpiece_ends[k0:k0 + len(chain) - 1, 1] = chain[1:]

    incident: List[List[Tuple[int, int]]] = [[] for _ in anchors]
    for k in range(n_sub):
        incident[int(subpiece_ends[k, 0])].append((k, 1))
        incident[int(subpiece_ends[k, 1])].append((k, -1))

    def direction_key(d):
        return rows[int(subpiece_atom[d[0]])], d[1]

    n_vertices = 2 * n_sub
    adjacency = np.full(3 * n_vertices, NO_NEIGHBOR, dtype=np.int64)
    sub = np.arange(n_sub)
    adjacency[3 * (2 * sub) + SLOT_CROSS] = 2 * sub + 1
    adjacency[3 * (2 * sub + 1) + SLOT_CROSS] = 2 * sub

    event_points = []
    for eid, dirs in enumerate(incident):
        try:
            ordered = sorted(dirs, key=cmp_to_key(lambda p, q: compare_directions(direction_key(p), direction_key(q))))
        except DegenerateGeometryError as exc:
            raise DegenerateArrangementError(f"event {eid}: {exc}") from exc
        for idx, (k_i, sign_i) in enumerate(ordered):
            k_n, sign_n = ordered[(idx + 1) % len(ordered)]
            # face between d_i and its counterclockwise successor d_n
            right_of_next = 2 * k_n + (0 if sign_n > 0 else 1)
            left_of_this = 2 * k_i + (1 if sign_i > 0 else 0)
            adjacency[3 * right_of_next + (SLOT_SOURCE if sign_n > 0 else SLOT_TARGET)] = left_of_this
            adjacency[3 * left_of_this + (SLOT_SOURCE if sign_i > 0 else SLOT_TARGET)] = right_of_next
        anchor = anchors[eid]
        event_points.append(EventPoint(
            point=anchor[1] if anchor[0] == "pt" else None,
            crossing=None if anchor[0] == "pt" else (anchor[1], anchor[2]),
            directions=tuple(ordered),
        ))

    if (adjacency == NO_NEIGHBOR).any():
        raise DegenerateArrangementError("bloated dual has unfilled adjacency slots")

    exterior = 2 * _exterior_subpiece(atoms, first, box)
    dual = BloatedDual(
        atoms=tuple(atoms),
        coords=np.asarray(rows, dtype=np.float64),
        subpiece_atom=subpiece_atom,
        subpiece_ends=subpiece_ends,
        adjacency=adjacency,
        events=tuple(event_points),
        box=box,
        exterior_vertex=exterior,
        n_pairs=int(pairs.shape[0]),
    )
    logger.debug("bloated dual: %d atoms, %d sub-pieces, %d events, %d vertices",
                 len(atoms), n_sub, len(event_points), n_vertices)
    return dual


def arrangement_for_vertex(d: Drawing, v: int, obstacles: Iterable[int], box: BoundingBox,
                           neighbors: Optional[Iterable[int]] = None, workers: int = 1) -> BloatedDual:
    """
    Bloated dual of the visibility arrangement for moving v.

    Args:
        d: Drawing
        v: Moving vertex
        obstacles: Obstacle edge ids
        box: Requested arrangement box; grown when it does not contain the
            neighbors and obstacle endpoints strictly inside
        neighbors: Neighbor subset (default N(v))
        workers: Worker count

    Returns:
        BloatedDual
    """
    obstacle_ids = sorted(set(int(e) for e in obstacles))
    us = d.graph.adjacency[v].tolist() if neighbors is None else [int(u) for u in neighbors]
    involved = set(us)
    for eid in obstacle_ids:
        involved.update(int(x) for x in d.graph.edges[eid])
    box = arrangement_box(d, box, involved)
    pieces = collect_pieces(d, v, obstacle_ids, box, neighbors=us)
    atoms = atomize_overlaps(pieces, workers=workers)
    return build_bloated_dual(atoms, box=box, workers=workers)


def dump_adjacency(dual: BloatedDual) -> str:
    """Plain-text adjacency listing, one dual vertex per line."""
    lines = [f"# bloated dual: {dual.n_vertices} vertices, {dual.n_subpieces} sub-pieces, "
             f"{len(dual.events)} events, exterior {dual.exterior_vertex}"]
    for v in range(dual.n_vertices):
        side = "L" if v & 1 else "R"
        k = v >> 1
        lines.append(
            f"{v} {side} sub={k} atom={int(dual.subpiece_atom[k])} "
            f"cross={dual.neighbor(v, SLOT_CROSS)} src={dual.neighbor(v, SLOT_SOURCE)} "
            f"tgt={dual.neighbor(v, SLOT_TARGET)} delta={dual.crossing_delta(v)}"
        )
    return "\n".join(lines) + "\n"
