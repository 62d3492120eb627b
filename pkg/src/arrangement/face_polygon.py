"""
Face polygons.

The only place where intersection coordinates of the arrangement are
computed: a face cycle is walked and every corner event is located.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from arrangement.bloated_dual import BloatedDual
from common.errors import UsageError
from geometry.predicates import intersection_point
from geometry.primitives import Point


@dataclass(frozen=True)
class FacePolygon:
    """
    Boundary of one face cycle.

    is_hole_cycle is True for clockwise cycles: the boundary of a hole in
    a face, or the outside of the box.
    """

    points: Tuple[Point, ...]
    vertices: Tuple[int, ...]
    cycle: int
    signed_area: float
    is_hole_cycle: bool
    is_exterior: bool

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.float64).reshape(-1, 2)


def signed_area(points) -> float:
    """Shoelace area, positive for counterclockwise rings."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if pts.shape[0] < 3:
        return 0.0
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def event_location(dual: BloatedDual, event: int) -> Point:
    ev = dual.events[event]
    if ev.point is not None:
        return ev.point
    i, j = ev.crossing
    return intersection_point(dual.atoms[i].geometry, dual.atoms[j].geometry)


def extract_face_polygon(dual: BloatedDual, start: int) -> FacePolygon:
    """
    Walk the face cycle through start and locate its corners.

    Args:
        dual: Bloated dual
        start: Any dual vertex

    Returns:
        FacePolygon whose i-th point is the corner reached from the i-th
        dual vertex of the walk
    """
    if not 0 <= int(start) < dual.n_vertices:
        raise UsageError(f"dual vertex {start} out of range 0..{dual.n_vertices - 1}")
    walk = dual.cycle(int(start))
    cache: Dict[int, Point] = {}
    points = []
    for v in walk:
        eid = dual.corner_event(v)
        if eid not in cache:
            cache[eid] = event_location(dual, eid)
        points.append(cache[eid])
    area = signed_area(points)
    cycle = int(dual.face_cycles[walk[0]])
    return FacePolygon(
        points=tuple(points),
        vertices=tuple(walk),
        cycle=cycle,
        signed_area=area,
        is_hole_cycle=area <= 0.0,
        is_exterior=cycle == dual.exterior_cycle,
    )
