import math

import numpy as np
import pytest

from delonepack.geom import (
    DegenerateTriangle,
    TriangleInequalityViolated,
    area_from_sides,
    incircle_predicate,
    orient2d,
    triangle_metrics,
)


def test_right_isoceles():
    m = triangle_metrics((0, 0), (2, 0), (0, 2))
    assert m.shape_class == "right"
    assert m.area == pytest.approx(2.0, abs=1e-14)
    assert m.circumradius == pytest.approx(math.sqrt(2), rel=1e-14)
    # hypotenuse is opposite the right angle at vertex 0
    assert m.longest_side_index == 0
    assert m.sides[0] == pytest.approx(2 * math.sqrt(2), rel=1e-14)


def test_equilateral():
    m = triangle_metrics((0, 0), (2, 0), (1, math.sqrt(3)))
    assert m.shape_class == "acute"
    assert m.area == pytest.approx(math.sqrt(3), rel=1e-14)
    assert m.circumradius == pytest.approx(2 / math.sqrt(3), rel=1e-14)


def test_obtuse_longest_side_opposite_obtuse_vertex():
    # (0.2, 0.5) lies inside the circle with the long side as diameter
    m = triangle_metrics((0, 0), (2 * math.sqrt(2), 0), (0.2, 0.5))
    assert m.shape_class == "obtuse"
    i = m.longest_side_index
    assert m.angles[i] == max(m.angles)
    assert m.angles[i] > math.pi / 2
    assert m.sides[i] == max(m.sides)


def test_degenerate_raises():
    with pytest.raises(DegenerateTriangle):
        triangle_metrics((0, 0), (1, 0), (2, 0))
    with pytest.raises(DegenerateTriangle):
        triangle_metrics((0, 0), (1, 0), (0.5, 1e-14))


def test_area_from_sides_basic():
    assert area_from_sides(2, 2, 2) == pytest.approx(math.sqrt(3), rel=1e-14)
    s = math.sqrt(2)
    assert area_from_sides(s, s, 2) == pytest.approx(1.0, rel=1e-14)
    with pytest.raises(TriangleInequalityViolated):
        area_from_sides(1, 1, 2.5)


def test_area_monotonicity_nonobtuse():
    # componentwise larger sides of a non-obtuse triangle give larger area
    assert area_from_sides(2, 2, 2) < area_from_sides(2, 2, 2.2)
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 500:
        sides = np.sort(rng.uniform(1.0, 2.0, size=3))[::-1]
        a, b, c = sides
        if a > b + c:
            continue
        # non-obtuse iff a^2 <= b^2 + c^2
        if a * a > b * b + c * c:
            continue
        bump = rng.uniform(1e-4, 0.05, size=3) * (rng.random(3) < 0.7)
        if not bump.any():
            continue
        a2, b2, c2 = a + bump[0], b + bump[1], c + bump[2]
        if max(a2, b2, c2) ** 2 > sum(v * v for v in (a2, b2, c2)) - max(a2, b2, c2) ** 2:
            continue  # keep the inflated triple non-obtuse as well
        assert area_from_sides(a2, b2, c2) > area_from_sides(a, b, c)
        checked += 1


def test_incircle_predicate_cases():
    sq = [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert incircle_predicate(sq[0], sq[1], sq[2], (0.5, 0.5)) == "inside"
    assert incircle_predicate(sq[0], sq[1], sq[2], sq[3]) == "on"
    r = 2.0
    circ = [
        (r * math.cos(t), r * math.sin(t)) for t in (0.1, 1.3, 2.9, 4.4)
    ]
    assert incircle_predicate(circ[0], circ[1], circ[2], (50.0, -3.0)) == "outside"
    # clockwise input must classify identically
    assert incircle_predicate(sq[2], sq[1], sq[0], (0.5, 0.5)) == "inside"


def test_orient2d_exact_fallback():
    # collinear points with coordinates that stress the float filter
    a = (1e-30, 1e-30)
    b = (2e-30, 2e-30)
    c = (3e-30, 3e-30)
    assert orient2d(a, b, c) == 0.0
    assert orient2d(a, b, (3e-30, 3.0000001e-30)) > 0.0
    assert orient2d(a, b, (3e-30, 2.9999999e-30)) < 0.0


def test_law_of_sines_and_heron_consistency():
    rng = np.random.default_rng(42)
    n = 0
    while n < 20000:
        pts = rng.uniform(-10, 10, size=(3, 2))
        try:
            m = triangle_metrics(pts[0], pts[1], pts[2])
        except DegenerateTriangle:
            continue
        diam2 = np.ptp(pts[:, 0]) ** 2 + np.ptp(pts[:, 1]) ** 2
        if m.area < 1e-3 * diam2:
            # side lengths rounded to doubles cannot pin a sliver's area to
            # 1e-10 relative, so the cross-check uses a quality floor
            continue
        two_r = 2.0 * m.circumradius
        for s, ang in zip(m.sides, m.angles):
            assert abs(s / math.sin(ang) - two_r) <= 1e-10 * two_r
        heron = area_from_sides(*m.sides)
        assert abs(heron - m.area) <= 1e-10 * m.area
        # circumcenter is equidistant from all three vertices
        dists = [math.dist(m.circumcenter, v) for v in m.vertices]
        for d in dists:
            assert abs(d - m.circumradius) <= 1e-9 * m.circumradius
        n += 1
