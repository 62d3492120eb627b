"""
Point and face sampling.

Polygons are triangulated by ear clipping (exact orientation tests on the
float corners); uniform points come from an area-weighted triangle choice
and square-root barycentric coordinates.
"""

import logging
from typing import TYPE_CHECKING, List, Sequence, Tuple

import numpy as np

from common.errors import DegenerateGeometryError, GeometryError
from geometry.predicates import orient_sign, orient_signs
from geometry.primitives import Point

if TYPE_CHECKING:
    from region_search.face_counts import FaceCounts

logger = logging.getLogger(__name__)


def _ring_of(polygon) -> np.ndarray:
    points = getattr(polygon, "points", polygon)
    return np.asarray(points, dtype=np.float64).reshape(-1, 2)


def simplify_ring(points) -> np.ndarray:
    """Drop repeated and collinear corners until none is left."""
    ring = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    while ring.shape[0] > 0:
        distinct = np.any(ring != np.roll(ring, 1, axis=0), axis=1)
        ring = ring[distinct] if distinct.any() else ring[:1]
        if ring.shape[0] < 3:
            return ring
        prev = np.roll(ring, 1, axis=0)
        nxt = np.roll(ring, -1, axis=0)
        turn = orient_signs(prev[:, 0], prev[:, 1], ring[:, 0], ring[:, 1], nxt[:, 0], nxt[:, 1])
        if (turn != 0).all():
            return ring
        ring = ring[turn != 0]
    return ring


def _blocks_ear(a, b, c, p) -> bool:
    if p == a or p == b or p == c:
        return False
    return (orient_sign(a[0], a[1], b[0], b[1], p[0], p[1]) >= 0
            and orient_sign(b[0], b[1], c[0], c[1], p[0], p[1]) >= 0
            and orient_sign(c[0], c[1], a[0], a[1], p[0], p[1]) >= 0)


def triangulate(polygon) -> np.ndarray:
    """
    Ear-clipping triangulation of a simple polygon.

    Args:
        polygon: Sequence of corners, or an object with a points attribute;
            either orientation

    Returns:
        (t, 3, 2) array of counterclockwise triangles

    Raises:
        GeometryError: If the polygon has zero area
        DegenerateGeometryError: If no ear can be found (self-intersecting ring)
    """
    ring = simplify_ring(_ring_of(polygon))
    if ring.shape[0] < 3:
        raise GeometryError("polygon has zero area")
    x, y = ring[:, 0], ring[:, 1]
    if np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y) < 0:
        ring = ring[::-1]
    pts: List[Tuple[float, float]] = [tuple(p) for p in ring.tolist()]
    idx = list(range(len(pts)))
    triangles = []

    while len(idx) > 3:
        m = len(idx)
        for k in range(m):
            i, j, l = idx[k - 1], idx[k], idx[(k + 1) % m]
            a, b, c = pts[i], pts[j], pts[l]
            if orient_sign(a[0], a[1], b[0], b[1], c[0], c[1]) <= 0:
                continue
            if any(_blocks_ear(a, b, c, pts[t]) for t in idx if t not in (i, j, l)):
                continue
            triangles.append((a, b, c))
            del idx[k]
            break
        else:
            # clipping can leave straight corners behind; they carry no area
            flat = [k for k in range(m) if orient_sign(*pts[idx[k - 1]], *pts[idx[k]], *pts[idx[(k + 1) % m]]) == 0]
            if not flat:
                raise DegenerateGeometryError(f"no ear left in a ring of {m} corners")
            del idx[flat[0]]
    a, b, c = (pts[t] for t in idx)
    if orient_sign(a[0], a[1], b[0], b[1], c[0], c[1]) > 0:
        triangles.append((a, b, c))
    if not triangles:
        raise GeometryError("polygon has zero area")
    return np.asarray(triangles, dtype=np.float64)


def triangle_areas(triangles: np.ndarray) -> np.ndarray:
    a, b, c = triangles[:, 0], triangles[:, 1], triangles[:, 2]
    return 0.5 * np.abs((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))


def interior_point(polygon) -> Point:
    """
    A point strictly inside the polygon: the centroid of its largest ear.

    Raises:
        GeometryError: If no triangle centroid is certified interior
    """
    triangles = triangulate(polygon)
    for t in np.argsort(-triangle_areas(triangles), kind="stable").tolist():
        a, b, c = triangles[t]
        p = (a + b + c) / 3.0
        if (orient_sign(a[0], a[1], b[0], b[1], p[0], p[1]) > 0
                and orient_sign(b[0], b[1], c[0], c[1], p[0], p[1]) > 0
                and orient_sign(c[0], c[1], a[0], a[1], p[0], p[1]) > 0):
            return Point(p[0], p[1])
    raise GeometryError("no certified interior point")


def sample_points_in_polygon(polygon, rng: np.random.Generator, size: int) -> np.ndarray:
    """(size, 2) uniform points inside a simple polygon."""
    triangles = triangulate(polygon)
    areas = triangle_areas(triangles)
    total = areas.sum()
    if not total > 0:
        raise GeometryError("polygon has zero area")
    chosen = rng.choice(triangles.shape[0], size=size, p=areas / total)
    r1 = np.sqrt(rng.random(size))[:, None]
    r2 = rng.random(size)[:, None]
    a, b, c = triangles[chosen, 0], triangles[chosen, 1], triangles[chosen, 2]
    return (1.0 - r1) * a + r1 * (1.0 - r2) * b + r1 * r2 * c


def sample_point_in_face(polygon, rng: np.random.Generator) -> Point:
    """Uniform point inside the outer-cycle polygon of a face."""
    p = sample_points_in_polygon(polygon, rng, 1)[0]
    return Point(p[0], p[1])


def face_weights(counts: "FaceCounts", faces: Sequence[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Faces and their probabilities 2^(min - Cr) / sum.

    Args:
        counts: Face counts
        faces: Faces to choose from (default: every interior face)

    Returns:
        (face ids, probabilities)
    """
    ids = np.flatnonzero(counts.interior) if faces is None else np.asarray(list(faces), dtype=np.int64)
    if ids.shape[0] == 0:
        raise GeometryError("no face to sample from")
    values = counts.counts[ids]
    weights = np.exp2(float(values.min()) - values.astype(np.float64))
    return ids, weights / weights.sum()


def weighted_face_sample(counts: "FaceCounts", rng: np.random.Generator, faces: Sequence[int] = None) -> int:
    """Face id drawn with probability proportional to 2^(M - Cr_face)."""
    ids, probs = face_weights(counts, faces)
    return int(rng.choice(ids, p=probs))
