"""
Exact geometric predicates.

Every predicate is evaluated in floating point first together with a forward
error bound; only when the float result cannot be trusted is the expression
re-evaluated with fractions.Fraction. Scalar functions take raw coordinates
so the hot loops in the arrangement code avoid object overhead; the public
wrappers take Point / Segment.

Intersection coordinates are produced in exactly one place,
intersection_point(), which increments COORDINATE_COUNTER.
"""

import threading
from fractions import Fraction
from functools import cmp_to_key
from typing import List, Sequence, Tuple

import numpy as np

from common.errors import DegenerateGeometryError, GeometryError
from geometry.primitives import AlongOrder, IntersectionMode, Orientation, Point, Segment

EPSILON = 2.0 ** -53
CCW_ERRBOUND = (3.0 + 16.0 * EPSILON) * EPSILON
# general 2x2 determinant of four independent differences
CROSS_ERRBOUND = 5.0 * EPSILON
PARAM_ERRBOUND = 6.0 * EPSILON

Coords = Tuple[float, float, float, float]


class CoordinateCounter:
    """Counts how many intersection coordinates were materialized."""

    def __init__(self):
        self._lock = threading.Lock()
        self._value = 0

    @property
    def value(self) -> int:
        return self._value

    def increment(self) -> None:
        with self._lock:
            self._value += 1

    def reset(self) -> None:
        with self._lock:
            self._value = 0


COORDINATE_COUNTER = CoordinateCounter()


def _sign(value) -> int:
    return int(value > 0) - int(value < 0)


def _exact_orient(ax, ay, bx, by, cx, cy) -> int:
    ax, ay, bx, by, cx, cy = (Fraction(t) for t in (ax, ay, bx, by, cx, cy))
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def orient_sign(ax: float, ay: float, bx: float, by: float, cx: float, cy: float) -> int:
    """Sign of (b - a) x (c - a): +1 left turn, -1 right turn, 0 collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    if detsum == 0.0:
        return 0
    if abs(det) > CCW_ERRBOUND * detsum:
        return 1 if det > 0 else -1
    return _exact_orient(ax, ay, bx, by, cx, cy)


def orient(p, q, r) -> Orientation:
    """Exact orientation of the triangle p, q, r."""
    return Orientation(orient_sign(p[0], p[1], q[0], q[1], r[0], r[1]))


def _exact_cross(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    ax, ay, bx, by, cx, cy, dx, dy = (Fraction(t) for t in (ax, ay, bx, by, cx, cy, dx, dy))
    return _sign((bx - ax) * (dy - cy) - (by - ay) * (dx - cx))


def cross_sign(ax, ay, bx, by, cx, cy, dx, dy) -> int:
    """Sign of (b - a) x (d - c)."""
    left = (bx - ax) * (dy - cy)
    right = (by - ay) * (dx - cx)
    det = left - right
    detsum = abs(left) + abs(right)
    if detsum == 0.0:
        return 0
    if abs(det) > CROSS_ERRBOUND * detsum:
        return 1 if det > 0 else -1
    return _exact_cross(ax, ay, bx, by, cx, cy, dx, dy)


def orient_signs(ax, ay, bx, by, cx, cy) -> np.ndarray:
    """
    Vectorized orient_sign over broadcastable arrays.

    Entries the float filter cannot certify are recomputed exactly one by one.
    """
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    detsum = np.abs(detleft) + np.abs(detright)
    signs = np.sign(det).astype(np.int8)
    ambiguous = (np.abs(det) <= CCW_ERRBOUND * detsum) & (detsum > 0)
    if ambiguous.any():
        full = np.broadcast_arrays(ax, ay, bx, by, cx, cy)
        for idx in zip(*np.nonzero(ambiguous)):
            signs[idx] = _exact_orient(*(float(arr[idx]) for arr in full))
    return signs


def _on_closed(sx, sy, tx, ty, px, py) -> bool:
    """p collinear with s and within its lexicographic extent."""
    return (sx, sy) <= (px, py) <= (tx, ty)


def intersect_coords(a: Coords, b: Coords, proper: bool) -> bool:
    asx, asy, atx, aty = a
    bsx, bsy, btx, bty = b
    o1 = orient_sign(asx, asy, atx, aty, bsx, bsy)
    o2 = orient_sign(asx, asy, atx, aty, btx, bty)
    o3 = orient_sign(bsx, bsy, btx, bty, asx, asy)
    o4 = orient_sign(bsx, bsy, btx, bty, atx, aty)
    if proper:
        return o1 * o2 < 0 and o3 * o4 < 0
    if o1 == 0 and o2 == 0:
        return max((asx, asy), (bsx, bsy)) <= min((atx, aty), (btx, bty))
    return o1 * o2 <= 0 and o3 * o4 <= 0


def segments_intersect(a: Segment, b: Segment, mode=IntersectionMode.CLOSED) -> bool:
    """
    Test two segments for intersection.

    Args:
        a: First segment
        b: Second segment
        mode: "proper" reports interior-interior crossings only; "closed" also
            reports endpoint touching and collinear overlap

    Returns:
        True if the segments intersect under the chosen mode
    """
    mode = IntersectionMode(mode)
    return intersect_coords(a.as_tuple(), b.as_tuple(), mode is IntersectionMode.PROPER)


def _param_parts(s: Coords, a: Coords):
    sx, sy, tx, ty = s
    ax, ay, bx, by = a
    dsx, dsy = tx - sx, ty - sy
    dax, day = bx - ax, by - ay
    n1, n2 = (ax - sx) * day, (ay - sy) * dax
    d1, d2 = dsx * day, dsy * dax
    return n1 - n2, abs(n1) + abs(n2), d1 - d2, abs(d1) + abs(d2)


def _exact_param_order(s: Coords, a: Coords, b: Coords) -> int:
    sx, sy, tx, ty = (Fraction(t) for t in s)

    def param(seg):
        ax, ay, bx, by = (Fraction(t) for t in seg)
        num = (ax - sx) * (by - ay) - (ay - sy) * (bx - ax)
        den = (tx - sx) * (by - ay) - (ty - sy) * (bx - ax)
        return num / den

    return _sign(param(a) - param(b))


def crossing_order(s: Coords, a: Coords, b: Coords) -> int:
    """
    Order of the points where the lines of a and b meet s, along s.

    Returns -1 if a's point comes first, 1 if b's does, 0 if they coincide.
    Neither a nor b may be parallel to s.
    """
    sa = cross_sign(s[0], s[1], s[2], s[3], a[0], a[1], a[2], a[3])
    sb = cross_sign(s[0], s[1], s[2], s[3], b[0], b[1], b[2], b[3])
    if sa == 0 or sb == 0:
        raise DegenerateGeometryError("segment parallel to the reference segment")
    na, pna, da, pda = _param_parts(s, a)
    nb, pnb, db, pdb = _param_parts(s, b)
    ena, eda = PARAM_ERRBOUND * pna, PARAM_ERRBOUND * pda
    enb, edb = PARAM_ERRBOUND * pnb, PARAM_ERRBOUND * pdb
    lhs, rhs = na * db, nb * da
    value = lhs - rhs
    bound = (
        (abs(na) + ena) * edb + abs(db) * ena
        + (abs(nb) + enb) * eda + abs(da) * enb
        + 3.0 * EPSILON * (abs(lhs) + abs(rhs))
    )
    if abs(value) > bound:
        return _sign(value) * sa * sb
    return _exact_param_order(s, a, b)


def point_vs_crossing(s: Coords, p: Tuple[float, float], a: Coords) -> int:
    """
    Order of point p (lying on s) against the crossing of s with a's line.

    Returns -1 if p comes first along s, 1 if after, 0 if p is on a's line.
    """
    op = orient_sign(a[0], a[1], a[2], a[3], p[0], p[1])
    if op == 0:
        return 0
    os_ = orient_sign(a[0], a[1], a[2], a[3], s[0], s[1])
    if os_ == 0:
        # s starts on a's line, so every other point of s is after the crossing
        return 1
    return -1 if op == os_ else 1


def intersection_order_along(s: Segment, a: Segment, b: Segment) -> AlongOrder:
    """
    Compare where a and b meet s, without computing the meeting points.

    Args:
        s: Reference segment
        a: Segment intersecting s
        b: Segment intersecting s

    Returns:
        AlongOrder of the two intersection parameters along s's direction
    """
    st, at, bt = s.as_tuple(), a.as_tuple(), b.as_tuple()
    for other in (at, bt):
        if not intersect_coords(st, other, proper=False):
            raise GeometryError("intersection_order_along: segment does not meet s")
        if cross_sign(st[0], st[1], st[2], st[3], other[0], other[1], other[2], other[3]) == 0:
            raise DegenerateGeometryError("intersection_order_along: segment overlaps s")
    return AlongOrder(crossing_order(st, at, bt))


def _is_upper(seg: Coords, sign: int) -> bool:
    # direction sign * (target - source); source < target lexicographically
    if sign > 0:
        return seg[3] >= seg[1]
    return seg[3] < seg[1]


def compare_directions(e1: Tuple[Coords, int], e2: Tuple[Coords, int]) -> int:
    """Counterclockwise comparator for directions sign * (target - source)."""
    (s1, g1), (s2, g2) = e1, e2
    h1 = 0 if _is_upper(s1, g1) else 1
    h2 = 0 if _is_upper(s2, g2) else 1
    if h1 != h2:
        return h1 - h2
    c = g1 * g2 * cross_sign(s1[0], s1[1], s1[2], s1[3], s2[0], s2[1], s2[2], s2[3])
    if c == 0:
        raise DegenerateGeometryError("two incident directions are parallel")
    return -1 if c > 0 else 1


def angular_order_around(ends: Sequence[Tuple[Segment, int]]) -> List[int]:
    """
    Counterclockwise order of segment directions around a shared point.

    Args:
        ends: (segment, sign) pairs; sign +1 means the direction from source
            to target leaves the shared point, -1 the reverse

    Returns:
        Indices into ends, counterclockwise starting from the positive x-axis
    """
    keyed = [(seg.as_tuple(), sign) for seg, sign in ends]
    order = sorted(range(len(keyed)), key=cmp_to_key(lambda i, j: compare_directions(keyed[i], keyed[j])))
    return order


def intersection_point(a: Segment, b: Segment) -> Point:
    """Intersection of the supporting lines of a and b, in floating point."""
    COORDINATE_COUNTER.increment()
    ax, ay, bx, by = a.as_tuple()
    cx, cy, dx, dy = b.as_tuple()
    den = (bx - ax) * (dy - cy) - (by - ay) * (dx - cx)
    if den == 0.0:
        raise DegenerateGeometryError("parallel segments have no intersection point")
    t = ((cx - ax) * (dy - cy) - (cy - ay) * (dx - cx)) / den
    return Point(ax + t * (bx - ax), ay + t * (by - ay))
