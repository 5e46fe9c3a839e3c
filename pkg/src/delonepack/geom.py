"""Planar primitives: robust orientation/incircle predicates and triangle metrics.

The predicates use a floating-point fast path with a forward error bound and
fall back to exact rational arithmetic (Python Fractions are exact on binary
doubles) only when the filter cannot decide the sign.  Triangle metrics are
computed with needle-safe formulas so that the law-of-sines and Heron
cross-checks agree to ~1e-12 relative even for thin triangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

# Unit roundoff and derived filter constants (Shewchuk-style A-bounds).
_EPS = math.ulp(1.0) / 2.0
_CCW_ERR_A = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERR_A = (10.0 + 96.0 * _EPS) * _EPS

# Right/obtuse classification band around pi/2, in radians.
EPS_ANGLE = 1e-9
# Cocircularity band for the incircle predicate, relative to the determinant
# magnitude bound ("permanent").
EPS_COCIRCULAR = 1e-9
# Degeneracy threshold: |signed area| < EPS_DEGENERATE * (bbox diameter)^2.
EPS_DEGENERATE = 1e-12


class GeometryError(ValueError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class TriangleInequalityViolated(GeometryError):
    pass


class Point2(NamedTuple):
    x: float
    y: float


def _orient2d_exact(ax, ay, bx, by, cx, cy):
    ax, ay, bx, by = Fraction(ax), Fraction(ay), Fraction(bx), Fraction(by)
    cx, cy = Fraction(cx), Fraction(cy)
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    if det > 0:
        return 1.0
    if det < 0:
        return -1.0
    return 0.0


def orient2d(a, b, c) -> float:
    """Twice the signed area of triangle (a, b, c): >0 for CCW, 0 collinear.

    Sign is exact; the magnitude is the floating-point value when the filter
    accepts it, else +-1/0 from the exact fallback.
    """
    ax, ay = a
    bx, by = b
    cx, cy = c
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if detleft > 0.0:
        if detright <= 0.0:
            return det
        detsum = detleft + detright
    elif detleft < 0.0:
        if detright >= 0.0:
            return det
        detsum = -detleft - detright
    else:
        return det
    if abs(det) >= _CCW_ERR_A * detsum:
        return det
    return _orient2d_exact(ax, ay, bx, by, cx, cy)


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy):
    ax, ay = Fraction(ax) - Fraction(dx), Fraction(ay) - Fraction(dy)
    bx, by = Fraction(bx) - Fraction(dx), Fraction(by) - Fraction(dy)
    cx, cy = Fraction(cx) - Fraction(dx), Fraction(cy) - Fraction(dy)
    det = (
        (ax * ax + ay * ay) * (bx * cy - cx * by)
        + (bx * bx + by * by) * (cx * ay - ax * cy)
        + (cx * cx + cy * cy) * (ax * by - bx * ay)
    )
    if det > 0:
        return 1.0
    if det < 0:
        return -1.0
    return 0.0


def incircle(a, b, c, d) -> float:
    """Incircle determinant: >0 iff d is inside the circle through CCW (a,b,c)."""
    det, _ = _incircle_with_permanent(a, b, c, d)
    return det


def _incircle_with_permanent(a, b, c, d):
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy

    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    alift = adx * adx + ady * ady
    cdxady = cdx * ady
    adxcdy = adx * cdy
    blift = bdx * bdx + bdy * bdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    clift = cdx * cdx + cdy * cdy

    det = (
        alift * (bdxcdy - cdxbdy)
        + blift * (cdxady - adxcdy)
        + clift * (adxbdy - bdxady)
    )
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    if abs(det) >= _ICC_ERR_A * permanent:
        return det, permanent
    return _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy), permanent


def incircle_predicate(a, b, c, d) -> str:
    """Classify d against the circumcircle of (a, b, c).

    Returns "inside", "on" or "outside"; "on" means the normalized incircle
    determinant is within EPS_COCIRCULAR of zero.  (a, b, c) may have either
    orientation; collinear (a, b, c) is rejected.
    """
    orient = orient2d(a, b, c)
    if orient == 0.0:
        raise DegenerateTriangle("circle through collinear points is undefined")
    det, permanent = _incircle_with_permanent(a, b, c, d)
    if orient < 0.0:
        det = -det
    if permanent == 0.0 or abs(det) <= EPS_COCIRCULAR * permanent:
        return "on"
    return "inside" if det > 0.0 else "outside"


@dataclass(frozen=True)
class TriangleMetrics:
    """Cached metric data of a non-degenerate planar triangle.

    Side a is opposite vertex 0, b opposite vertex 1, c opposite vertex 2;
    angles follow the same indexing.  shape_class is "acute" / "right" /
    "obtuse" with a EPS_ANGLE band around pi/2; right triangles count as
    non-obtuse throughout the package.
    """

    vertices: tuple[Point2, Point2, Point2]
    sides: tuple[float, float, float]
    angles: tuple[float, float, float]
    area: float
    circumcenter: Point2
    circumradius: float
    shape_class: str
    longest_side_index: int

    @property
    def is_obtuse(self) -> bool:
        return self.shape_class == "obtuse"

    @property
    def max_angle(self) -> float:
        return max(self.angles)


def _angle_at(p, q, r):
    # Angle at p spanned by q and r, via atan2: stable for tiny and near-pi.
    ux, uy = q[0] - p[0], q[1] - p[1]
    vx, vy = r[0] - p[0], r[1] - p[1]
    cross = ux * vy - uy * vx
    dot = ux * vx + uy * vy
    return math.atan2(abs(cross), dot)


def area_from_sides(a: float, b: float, c: float) -> float:
    """Heron area from side lengths, in the numerically stable sorted form."""
    x, y, z = sorted((a, b, c), reverse=True)  # x >= y >= z
    if z < 0.0 or x > y + z:
        raise TriangleInequalityViolated(f"sides ({a}, {b}, {c})")
    t = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    # t can round to a tiny negative for degenerate-ish input
    return 0.25 * math.sqrt(max(t, 0.0))


def triangle_metrics(p, q, r) -> TriangleMetrics:
    """Build TriangleMetrics for vertices p, q, r (any orientation).

    Raises DegenerateTriangle if |signed area| < EPS_DEGENERATE * diam(bbox)^2.
    """
    pts = (Point2(*map(float, p)), Point2(*map(float, q)), Point2(*map(float, r)))
    xs = [v.x for v in pts]
    ys = [v.y for v in pts]
    diam2 = (max(xs) - min(xs)) ** 2 + (max(ys) - min(ys)) ** 2
    signed2 = orient2d(pts[0], pts[1], pts[2])  # twice signed area
    if abs(signed2) * 0.5 < EPS_DEGENERATE * diam2 or signed2 == 0.0:
        raise DegenerateTriangle(f"vertices {pts}")

    a = math.dist(pts[1], pts[2])
    b = math.dist(pts[2], pts[0])
    c = math.dist(pts[0], pts[1])
    angles = (
        _angle_at(pts[0], pts[1], pts[2]),
        _angle_at(pts[1], pts[2], pts[0]),
        _angle_at(pts[2], pts[0], pts[1]),
    )
    area = 0.5 * abs(signed2)
    circumradius = a * b * c / (2.0 * abs(signed2))

    # Circumcenter relative to vertex 0 (translation improves conditioning).
    bx, by = pts[1].x - pts[0].x, pts[1].y - pts[0].y
    cx, cy = pts[2].x - pts[0].x, pts[2].y - pts[0].y
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    center = Point2(pts[0].x + ux, pts[0].y + uy)

    mx = max(angles)
    if mx > math.pi / 2.0 + EPS_ANGLE:
        shape = "obtuse"
    elif mx >= math.pi / 2.0 - EPS_ANGLE:
        shape = "right"
    else:
        shape = "acute"
    longest = max(range(3), key=lambda i: ((a, b, c)[i], i))
    # The longest side must sit opposite the widest angle; for ties (isoceles)
    # pick the max-angle index so the pairing invariant holds exactly.
    if angles[longest] != mx:
        longest = max(range(3), key=lambda i: angles[i])

    return TriangleMetrics(
        vertices=pts,
        sides=(a, b, c),
        angles=angles,
        area=area,
        circumcenter=center,
        circumradius=circumradius,
        shape_class=shape,
        longest_side_index=longest,
    )
