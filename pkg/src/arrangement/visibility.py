"""
Visibility boundaries.

For a neighbor u of the moving vertex v and an obstacle edge e, the shadow of
e seen from u is the set of positions p where the segment u-p crosses e. Its
boundary is e itself plus the two rays leaving e's endpoints away from u.
Each boundary piece is tagged with (u, e, kind) and with the side on which
the shadow lies, relative to the piece's source -> target direction.
"""

import logging
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Iterable, List, Optional

import numpy as np

from common.errors import DegenerateGeometryError
from geometry.clipping import clip_segment_to_box, clip_to_box
from geometry.predicates import orient_sign
from geometry.primitives import BoundingBox, Point, Segment
from graph_model.drawing import Drawing

logger = logging.getLogger(__name__)


class PieceKind(str, Enum):
    OBSTACLE = "obstacle-segment"
    RAY_FROM_SOURCE = "ray-from-endpoint-1"
    RAY_FROM_TARGET = "ray-from-endpoint-2"
    BOX_WALL = "box-wall"


class ShadowSide(IntEnum):
    RIGHT = -1
    NONE = 0
    LEFT = 1


@dataclass(frozen=True)
class PieceTag:
    neighbor: int
    edge: int
    kind: PieceKind


@dataclass(frozen=True)
class TaggedPiece:
    geometry: Segment
    tag: PieceTag
    shadow_side: ShadowSide


def _side_of(segment: Segment, point) -> ShadowSide:
    s, t = segment.source, segment.target
    return ShadowSide(orient_sign(s[0], s[1], t[0], t[1], point[0], point[1]))


def shadow_boundary(u, e: Segment, box: BoundingBox, neighbor: int = -1,
                    edge: int = -1) -> List[TaggedPiece]:
    """
    Boundary pieces of the shadow of e seen from u.

    Args:
        u: Viewpoint (position of a neighbor of the moving vertex)
        e: Obstacle segment
        box: Clipping box
        neighbor: Vertex id recorded in the tags
        edge: Edge id recorded in the tags

    Returns:
        Up to three pieces: the obstacle and the rays from its source and
        target; pieces whose clip is empty are omitted
    """
    a, b = e.source, e.target
    side_of_u = orient_sign(a[0], a[1], b[0], b[1], u[0], u[1])
    if side_of_u == 0:
        if a <= Point(u[0], u[1]) <= b:
            raise DegenerateGeometryError(f"viewpoint {tuple(u)} lies on obstacle {e}")
        # viewpoint on the supporting line: the open shadow is empty
        return []

    pieces: List[TaggedPiece] = []
    obstacle = clip_segment_to_box(a, b, box)
    if obstacle is not None:
        pieces.append(TaggedPiece(obstacle, PieceTag(neighbor, edge, PieceKind.OBSTACLE),
                                  ShadowSide(-_side_of(obstacle, u))))

    for start, other, kind in ((a, b, PieceKind.RAY_FROM_SOURCE), (b, a, PieceKind.RAY_FROM_TARGET)):
        ray = clip_to_box(start, (start[0] - u[0], start[1] - u[1]), box)
        if ray is not None:
            pieces.append(TaggedPiece(ray, PieceTag(neighbor, edge, kind), _side_of(ray, other)))
    return pieces


def collect_pieces(d: Drawing, v: int, obstacles: Iterable[int], box: BoundingBox,
                   neighbors: Optional[Iterable[int]] = None) -> List[TaggedPiece]:
    """
    All tagged boundary pieces of the arrangement for moving v, plus walls.

    A pair (u, e) is skipped when e is incident to u or v, or when u lies on
    the supporting line of e (its open shadow is empty).

    Args:
        d: Drawing
        v: Moving vertex
        obstacles: Edge ids acting as obstacles
        box: Arrangement box
        neighbors: Neighbor subset defining the arrangement (default N(v))

    Returns:
        Pieces in (neighbor, obstacle, kind) order followed by the four walls
    """
    g = d.graph
    pos = d.positions
    us = g.adjacency[v].tolist() if neighbors is None else [int(u) for u in neighbors]
    obstacle_ids = sorted(set(int(e) for e in obstacles))
    pieces: List[TaggedPiece] = []

    for u in us:
        up = (float(pos[u, 0]), float(pos[u, 1]))
        for eid in obstacle_ids:
            x, y = (int(t) for t in g.edges[eid])
            if x in (u, v) or y in (u, v):
                continue
            seg = Segment.of((pos[x, 0], pos[x, 1]), (pos[y, 0], pos[y, 1]))
            s, t = seg.source, seg.target
            if orient_sign(s[0], s[1], t[0], t[1], up[0], up[1]) == 0:
                continue
            pieces.extend(shadow_boundary(up, seg, box, neighbor=u, edge=eid))

    for wall in box.walls():
        pieces.append(TaggedPiece(wall, PieceTag(-1, -1, PieceKind.BOX_WALL), ShadowSide.NONE))
    logger.debug("vertex %d: %d pieces from %d neighbors x %d obstacles",
                 v, len(pieces), len(us), len(obstacle_ids))
    return pieces


def arrangement_box(d: Drawing, box: BoundingBox, vertices: Iterable[int]) -> BoundingBox:
    """box, grown when some involved vertex lies outside or on its boundary."""
    ids = np.asarray(sorted(set(int(x) for x in vertices)), dtype=np.int64)
    if ids.shape[0] == 0:
        return box
    pts = d.positions[ids]
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    if box.xmin < lo[0] and box.ymin < lo[1] and hi[0] < box.xmax and hi[1] < box.ymax:
        return box
    span = max(float(hi[0] - lo[0]), float(hi[1] - lo[1]), box.width, box.height)
    margin = 0.05 * span
    grown = BoundingBox(Point(lo[0] - margin, lo[1] - margin), Point(hi[0] + margin, hi[1] + margin))
    logger.warning("drawing leaves the arrangement box; using %s", grown)
    return box.union(grown)
