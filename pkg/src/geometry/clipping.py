"""
Ray clipping against an axis-aligned box (Liang-Barsky).

Computed endpoints are snapped onto the wall they lie on, so a clipped ray
always ends exactly on the box boundary and the wall/ray incidence is
decided exactly by the predicates.
"""

import math
from typing import Optional, Tuple

from common.errors import GeometryError
from geometry.primitives import BoundingBox, Point, Segment


def _clamp(value: float, lo: float, hi: float) -> float:
    return lo if value < lo else hi if value > hi else value


def _point_at(origin, direction, t: float, wall_axis: Optional[int], wall_value: float,
              box: BoundingBox) -> Point:
    if t == 0.0:
        return Point(origin[0], origin[1])
    x = origin[0] + t * direction[0]
    y = origin[1] + t * direction[1]
    x = _clamp(x, box.xmin, box.xmax)
    y = _clamp(y, box.ymin, box.ymax)
    if wall_axis == 0:
        x = wall_value
    elif wall_axis == 1:
        y = wall_value
    return Point(x, y)


def clip_to_box(origin, direction: Tuple[float, float], box: BoundingBox) -> Optional[Segment]:
    """
    Clip the ray origin + t * direction (t >= 0) to a box.

    Args:
        origin: Start of the ray
        direction: Nonzero direction vector
        box: Clipping box

    Returns:
        The clipped portion as a Segment, or None if the ray misses the box
        or only touches it in a single point
    """
    dx, dy = float(direction[0]), float(direction[1])
    if not (math.isfinite(dx) and math.isfinite(dy)) or (dx == 0.0 and dy == 0.0):
        raise GeometryError(f"invalid ray direction ({dx}, {dy})")

    t_enter, t_exit = 0.0, math.inf
    enter_wall: Tuple[Optional[int], float] = (None, 0.0)
    exit_wall: Tuple[Optional[int], float] = (None, 0.0)

    for axis, d, lo, hi in ((0, dx, box.xmin, box.xmax), (1, dy, box.ymin, box.ymax)):
        o = origin[axis]
        if d == 0.0:
            if o < lo or o > hi:
                return None
            continue
        near, far = (lo, hi) if d > 0 else (hi, lo)
        t_near = (near - o) / d
        t_far = (far - o) / d
        if t_near > t_enter:
            t_enter, enter_wall = t_near, (axis, near)
        if t_far < t_exit:
            t_exit, exit_wall = t_far, (axis, far)

    if t_enter >= t_exit:
        return None

    start = _point_at(origin, (dx, dy), t_enter, enter_wall[0], enter_wall[1], box)
    end = _point_at(origin, (dx, dy), t_exit, exit_wall[0], exit_wall[1], box)
    if start == end:
        return None
    return Segment.of(start, end)


def clip_segment_to_box(a, b, box: BoundingBox) -> Optional[Segment]:
    """Portion of the segment a-b inside the box, or None."""
    if box.contains(a) and box.contains(b):
        return Segment.of(a, b)
    ray = clip_to_box(a, (b[0] - a[0], b[1] - a[1]), box)
    if ray is None:
        return None
    back = clip_to_box(b, (a[0] - b[0], a[1] - b[1]), box)
    if back is None:
        return None
    # the part inside the box is the overlap of the two opposite rays
    lo = max(ray.source, back.source)
    hi = min(ray.target, back.target)
    if not lo < hi:
        return None
    return Segment(lo, hi)
