"""
Geometric primitives.

Point, Segment, BoundingBox and Orientation. Points are tuples so they can be
compared lexicographically and used as dictionary keys; segments are always
stored with the lexicographically smaller endpoint as source.
"""

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from operator import itemgetter
from typing import List, Tuple

from common.errors import GeometryError


class Point(tuple):
    """A finite point in the plane."""

    __slots__ = ()

    def __new__(cls, x: float, y: float) -> "Point":
        x = float(x)
        y = float(y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError(f"non-finite point ({x}, {y})")
        return tuple.__new__(cls, (x, y))

    def __getnewargs__(self) -> Tuple[float, float]:
        return tuple(self)

    x = property(itemgetter(0))
    y = property(itemgetter(1))

    def __repr__(self) -> str:
        return f"Point({self[0]!r}, {self[1]!r})"


class Orientation(IntEnum):
    """Sign of the orientation determinant."""

    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


class IntersectionMode(str, Enum):
    PROPER = "proper"
    CLOSED = "closed"


class AlongOrder(IntEnum):
    """Result of comparing two intersection parameters along a segment."""

    A_BEFORE_B = -1
    EQUAL = 0
    B_BEFORE_A = 1


@dataclass(frozen=True, slots=True)
class Segment:
    """Directed segment; source is the lexicographic minimum of the endpoints."""

    source: Point
    target: Point

    def __post_init__(self):
        if not isinstance(self.source, Point):
            object.__setattr__(self, "source", Point(*self.source))
        if not isinstance(self.target, Point):
            object.__setattr__(self, "target", Point(*self.target))
        if self.source == self.target:
            raise GeometryError(f"zero-length segment at {self.source}")
        if self.target < self.source:
            raise GeometryError("segment source must be the lexicographic minimum; use Segment.of")

    @classmethod
    def of(cls, p, q) -> "Segment":
        """Build a segment from two endpoints in any order."""
        p = p if isinstance(p, Point) else Point(*p)
        q = q if isinstance(q, Point) else Point(*q)
        return cls(p, q) if p < q else cls(q, p)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.source[0], self.source[1], self.target[0], self.target[1])


@dataclass(frozen=True, slots=True)
class BoundingBox:
    """Axis-aligned box with positive width and height."""

    min_corner: Point
    max_corner: Point

    def __post_init__(self):
        if not isinstance(self.min_corner, Point):
            object.__setattr__(self, "min_corner", Point(*self.min_corner))
        if not isinstance(self.max_corner, Point):
            object.__setattr__(self, "max_corner", Point(*self.max_corner))
        if not (self.min_corner[0] < self.max_corner[0] and self.min_corner[1] < self.max_corner[1]):
            raise GeometryError(f"empty box {self.min_corner} - {self.max_corner}")

    @property
    def xmin(self) -> float:
        return self.min_corner[0]

    @property
    def ymin(self) -> float:
        return self.min_corner[1]

    @property
    def xmax(self) -> float:
        return self.max_corner[0]

    @property
    def ymax(self) -> float:
        return self.max_corner[1]

    @property
    def width(self) -> float:
        return self.xmax - self.xmin

    @property
    def height(self) -> float:
        return self.ymax - self.ymin

    @property
    def center(self) -> Point:
        return Point((self.xmin + self.xmax) / 2.0, (self.ymin + self.ymax) / 2.0)

    def contains(self, p, strict: bool = False) -> bool:
        x, y = p[0], p[1]
        if strict:
            return self.xmin < x < self.xmax and self.ymin < y < self.ymax
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def walls(self) -> List[Segment]:
        """Bottom, right, top and left wall, each lexicographically directed."""
        lo, hi = self.min_corner, self.max_corner
        lower_right = Point(hi[0], lo[1])
        upper_left = Point(lo[0], hi[1])
        return [
            Segment(lo, lower_right),
            Segment(lower_right, hi),
            Segment(upper_left, hi),
            Segment(lo, upper_left),
        ]

    def union(self, other: "BoundingBox") -> "BoundingBox":
        return BoundingBox(
            Point(min(self.xmin, other.xmin), min(self.ymin, other.ymin)),
            Point(max(self.xmax, other.xmax), max(self.ymax, other.ymax)),
        )
