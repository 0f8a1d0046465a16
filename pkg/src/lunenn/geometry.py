"""Points, circles, and circle inversion in the plane."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import DegenerateInputError, PreconditionError
from .predicates import orientation_sign


class Point(NamedTuple):
    x: float
    y: float


class _PointAtInfinity:
    """Singleton marker for the point at infinity on the extended plane."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "AT_INFINITY"


AT_INFINITY = _PointAtInfinity()

ExtendedPoint = Union[Point, _PointAtInfinity]


def is_infinite(p: ExtendedPoint) -> bool:
    return p is AT_INFINITY


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", Point(*self.center))
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise DegenerateInputError("circle radius must be finite and positive")
        if not (math.isfinite(self.center.x) and math.isfinite(self.center.y)):
            raise DegenerateInputError("circle center must be finite")


def invert_point(circle: Circle, p: ExtendedPoint) -> ExtendedPoint:
    """Invert p in the circle: the image lies on the same ray from the
    center with |cp| * |cp'| = r^2.  The exact center maps to AT_INFINITY
    and AT_INFINITY maps to the center.
    """
    if is_infinite(p):
        return circle.center
    cx, cy = circle.center
    dx = p[0] - cx
    dy = p[1] - cy
    if dx == 0.0 and dy == 0.0:
        return AT_INFINITY
    scale = circle.radius * circle.radius / (dx * dx + dy * dy)
    return Point(cx + scale * dx, cy + scale * dy)


def circumcircle(p, q, r) -> Circle:
    """Circle through three non-collinear points."""
    if orientation_sign(p, q, r) == 0:
        raise DegenerateInputError("circumcircle requires non-collinear points")
    # Translate so p is the origin; solves the perpendicular-bisector system.
    bx = q[0] - p[0]
    by = q[1] - p[1]
    cx = r[0] - p[0]
    cy = r[1] - p[1]
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point(p[0] + ux, p[1] + uy)
    return Circle(center, math.hypot(ux, uy))


def circle_angle_at_common_point(first: Circle, second: Circle, p) -> float:
    """Angle in [0, pi] between the two radius vectors drawn to p, a point
    lying on both circles (within 1e-9 relative residual)."""
    for circle in (first, second):
        residual = abs(math.hypot(p[0] - circle.center.x, p[1] - circle.center.y) - circle.radius)
        if residual > 1e-9 * circle.radius:
            raise PreconditionError(
                "point is not on the circle: residual %g exceeds 1e-9 * radius" % residual
            )
    ux = p[0] - first.center.x
    uy = p[1] - first.center.y
    vx = p[0] - second.center.x
    vy = p[1] - second.center.y
    cross = ux * vy - uy * vx
    dot = ux * vx + uy * vy
    return math.atan2(abs(cross), dot)
