from fractions import Fraction

import numpy as np
import pytest

from common.errors import DegenerateGeometryError, GeometryError
from geometry.predicates import (
    angular_order_around,
    crossing_order,
    intersection_order_along,
    intersection_point,
    orient,
    orient_sign,
    orient_signs,
    point_vs_crossing,
    segments_intersect,
)
from geometry.primitives import AlongOrder, BoundingBox, Orientation, Point, Segment


def exact_orient(a, b, c):
    ax, ay, bx, by, cx, cy = (Fraction(t) for t in (*a, *b, *c))
    det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (det > 0) - (det < 0)


def test_orient_basic():
    assert orient((0, 0), (1, 0), (0, 1)) is Orientation.LEFT
    assert orient((0, 0), (1, 0), (0, -1)) is Orientation.RIGHT
    assert orient((0, 0), (1, 1), (2, 2)) is Orientation.COLLINEAR


def test_orient_matches_rational_on_near_degenerate_inputs():
    r = np.random.default_rng(1)
    for _ in range(500):
        base = r.uniform(-1.0, 1.0)
        a = (12.0, 12.0)
        b = (24.0, 24.0)
        step = int(r.integers(-1, 2))
        c = (base, base if step == 0 else float(np.nextafter(base, step * np.inf)))
        assert orient_sign(*a, *b, *c) == exact_orient(a, b, c)


def test_orient_signs_vectorized_agrees_with_scalar():
    r = np.random.default_rng(2)
    pts = r.uniform(-5, 5, size=(200, 2))
    pts[::3, 1] = pts[::3, 0]  # collinear with the reference line
    signs = orient_signs(0.0, 0.0, 1.0, 1.0, pts[:, 0], pts[:, 1])
    expected = [orient_sign(0.0, 0.0, 1.0, 1.0, x, y) for x, y in pts.tolist()]
    assert signs.tolist() == expected


def test_segments_intersect_modes():
    a = Segment.of((0, 0), (2, 2))
    b = Segment.of((0, 2), (2, 0))
    touching = Segment.of((2, 2), (3, 0))
    overlap = Segment.of((1, 1), (3, 3))
    far = Segment.of((5, 5), (6, 7))
    assert segments_intersect(a, b, "proper")
    assert segments_intersect(a, touching, "closed")
    assert not segments_intersect(a, touching, "proper")
    assert segments_intersect(a, overlap, "closed")
    assert not segments_intersect(a, overlap, "proper")
    assert not segments_intersect(a, far)


def test_crossing_order_along_segment():
    s = (0.0, 0.0, 10.0, 0.0)
    a = (2.0, -1.0, 2.0, 1.0)
    b = (5.0, -1.0, 5.0, 1.0)
    assert crossing_order(s, a, b) == -1
    assert crossing_order(s, b, a) == 1


def test_crossing_order_detects_common_point():
    s = (0.0, 0.0, 10.0, 0.0)
    a = (2.0, -1.0, 2.0, 1.0)
    b = (1.0, -1.0, 3.0, 1.0)
    assert crossing_order(s, a, b) == 0


def test_crossing_order_rejects_parallel():
    with pytest.raises(DegenerateGeometryError):
        crossing_order((0.0, 0.0, 1.0, 0.0), (0.0, 1.0, 1.0, 1.0), (0.5, -1.0, 0.5, 1.0))


def test_crossing_order_near_coincident_crossings():
    s = (0.0, 0.0, 1.0, 0.0)
    x = 0.3
    a = (x, -1.0, x, 1.0)
    b = (np.nextafter(x, 1.0), -1.0, np.nextafter(x, 1.0), 1.0)
    assert crossing_order(s, a, b) == -1
    assert crossing_order(s, b, a) == 1


def test_point_vs_crossing():
    s = (0.0, 0.0, 10.0, 0.0)
    a = (4.0, -1.0, 4.0, 1.0)
    assert point_vs_crossing(s, (1.0, 0.0), a) == -1
    assert point_vs_crossing(s, (6.0, 0.0), a) == 1
    assert point_vs_crossing(s, (4.0, 0.0), a) == 0


def test_intersection_order_along_wrapper():
    s = Segment.of((0, 0), (10, 0))
    a = Segment.of((2, -1), (2, 1))
    b = Segment.of((5, -1), (5, 1))
    assert intersection_order_along(s, a, b) is AlongOrder.A_BEFORE_B
    assert intersection_order_along(s, b, a) is AlongOrder.B_BEFORE_A
    with pytest.raises(GeometryError):
        intersection_order_along(s, a, Segment.of((20, -1), (20, 1)))


def test_angular_order_counterclockwise_from_positive_x():
    right = (Segment.of((0, 0), (1, 0)), 1)
    up = (Segment.of((0, 0), (0, 1)), 1)
    left = (Segment.of((0, 0), (-1, 0)), -1)
    down = (Segment.of((0, 0), (0, -1)), -1)
    assert angular_order_around([down, left, right, up]) == [2, 3, 1, 0]


def test_intersection_point_counts_materializations(coordinate_counter):
    p = intersection_point(Segment.of((0, 0), (1, 1)), Segment.of((0, 1), (1, 0)))
    assert p == Point(0.5, 0.5)
    assert coordinate_counter.value == 1


def test_segment_and_box_validation():
    with pytest.raises(GeometryError):
        Segment.of((1, 1), (1, 1))
    with pytest.raises(GeometryError):
        Segment(Point(2, 0), Point(1, 0))
    with pytest.raises(GeometryError):
        BoundingBox((0, 0), (0, 1))
    with pytest.raises(GeometryError):
        Point(float("nan"), 0)
    assert Segment.of((2, 0), (1, 0)).source == Point(1, 0)


def rational_param(s, a):
    """Where the line of a meets s, as a fraction of s's length."""
    sx, sy, tx, ty = (Fraction(t) for t in s.as_tuple())
    ax, ay, bx, by = (Fraction(t) for t in a.as_tuple())
    dx, dy = bx - ax, by - ay
    return ((ax - sx) * dy - (ay - sy) * dx) / ((tx - sx) * dy - (ty - sy) * dx)


def meets_transversally(s, a):
    sx, sy, tx, ty = (Fraction(t) for t in s.as_tuple())
    ax, ay, bx, by = (Fraction(t) for t in a.as_tuple())
    return (tx - sx) * (by - ay) - (ty - sy) * (bx - ax) != 0


def crossing_triples(r, count, span):
    """Random (s, a, b) with a and b crossing s; small integer spans produce ties."""
    found = []
    while len(found) < count:
        pts = r.integers(-span, span + 1, size=(6, 2)).astype(float)
        if r.random() < 0.5:
            pts = pts + r.uniform(-0.5, 0.5, size=pts.shape)
        if any((p == q).all() for p, q in (pts[0:2], pts[2:4], pts[4:6])):
            continue
        s, a, b = (Segment.of(pts[i], pts[i + 1]) for i in (0, 2, 4))
        if all(segments_intersect(s, x) and meets_transversally(s, x) for x in (a, b)):
            found.append((s, a, b))
    return found


def test_intersection_order_matches_rational_parameters():
    r = np.random.default_rng(21)
    checked = 0
    ties = 0
    while checked < 1000:
        for s, a, b in crossing_triples(r, 50, 4):
            ta, tb = rational_param(s, a), rational_param(s, b)
            want = (ta > tb) - (ta < tb)
            assert intersection_order_along(s, a, b) == want
            checked += 1
            ties += want == 0
    assert ties > 0


def test_intersection_order_is_transitive():
    r = np.random.default_rng(22)
    s = Segment.of((0.0, 0.0), (8.0, 3.0))
    crossing = []
    while len(crossing) < 12:
        t = int(r.integers(1, 8)) / 8.0
        p = np.array([8.0 * t, 3.0 * t])
        d = r.integers(-3, 4, size=2).astype(float)
        a = Segment.of(p - d, p + 2 * d) if d.any() else None
        if a is not None and segments_intersect(s, a) and meets_transversally(s, a):
            crossing.append(a)
    order = [[int(intersection_order_along(s, a, b)) for b in crossing] for a in crossing]
    n = len(crossing)
    for i in range(n):
        assert order[i][i] == 0
        for j in range(n):
            assert order[i][j] == -order[j][i]
            for k in range(n):
                if order[i][j] == order[j][k]:
                    assert order[i][k] == order[i][j]


def test_angular_order_matches_atan2_on_random_stars():
    r = np.random.default_rng(23)
    for _ in range(200):
        center = r.integers(-50, 51, size=2).astype(float)
        directions = {}
        for d in r.integers(-5, 6, size=(int(r.integers(2, 9)), 2)).tolist():
            if d == [0, 0]:
                continue
            g = np.gcd(abs(d[0]), abs(d[1]))
            directions.setdefault((d[0] // g, d[1] // g), d)
        dirs = list(directions.values())
        ends = []
        for d in dirs:
            seg = Segment.of(center, center + np.array(d, dtype=float))
            ends.append((seg, 1 if seg.source == Point(*center) else -1))
        angles = [np.arctan2(d[1], d[0]) % (2 * np.pi) for d in dirs]
        assert angular_order_around(ends) == sorted(range(len(dirs)), key=lambda i: angles[i])


def test_angular_order_rejects_parallel_directions():
    ends = [(Segment.of((0, 0), (1, 1)), 1), (Segment.of((0, 0), (2, 2)), 1), (Segment.of((0, 0), (0, 1)), 1)]
    with pytest.raises(DegenerateGeometryError):
        angular_order_around(ends)
