import math

import numpy as np
import pytest

from delonepack import generators
from delonepack.delone import Window, build_delone, bulk_min_distance_brute
from delonepack.grouping import (
    RATIO_LIMIT,
    RatioExceeded,
    average_area_certificate,
    build_obtuse_digraph,
    form_groups,
    min_nonobtuse_area,
    rr_radii,
)


def test_square_lattice_certificate_sharp():
    pts, dom = generators.square_lattice(2.0, 3, 3)
    t = build_delone(pts, dom)
    radii = rr_radii(t)
    assert radii.r == pytest.approx(1.0, abs=1e-12)
    assert radii.R == pytest.approx(math.sqrt(2), rel=1e-12)
    g = build_obtuse_digraph(t, radii)
    assert g.n_edges == 0  # right triangles emit nothing
    rep = average_area_certificate(t)
    assert rep.passed
    assert rep.mean_area == pytest.approx(2.0 * radii.r**2, abs=1e-9)
    assert rep.case_counts == {1: t.n_triangles, 2: 0, 3: 0, 4: 0}


def test_triangular_lattice_certificate():
    pts, dom = generators.triangular_lattice(2.0, 4, 4)
    t = build_delone(pts, dom)
    rep = average_area_certificate(t)
    assert rep.passed
    assert rep.v0 == pytest.approx(math.sqrt(3), rel=1e-9)
    assert rep.mean_area == pytest.approx(math.sqrt(3), rel=1e-9)
    assert rep.bound == pytest.approx(math.sqrt(3), rel=1e-9)


def test_rr_radii_match_brute_force():
    pts, dom = generators.square_lattice(2.0, 4, 4)
    pts = generators.jitter(pts, 0.25, seed=17, domain=dom)
    t = build_delone(pts, dom)
    radii = rr_radii(t)
    assert 2 * radii.r == pytest.approx(bulk_min_distance_brute(pts, dom), rel=1e-12)
    # covering radius: every point of a fine grid is within R of some point
    xs = np.linspace(0, dom.period_x, 60, endpoint=False)
    ys = np.linspace(0, dom.period_y, 60, endpoint=False)
    gx, gy = np.meshgrid(xs, ys)
    grid = np.column_stack([gx.ravel(), gy.ravel()])
    periods = dom.periods
    worst = 0.0
    for q in grid:
        d = pts - q
        d -= np.round(d / periods) * periods
        worst = max(worst, float(np.min(np.hypot(d[:, 0], d[:, 1]))))
    assert worst <= radii.R + 1e-9


def test_single_obtuse_edge():
    # two triangles over a common long side: the obtuse one points at the
    # acute one and forms a two-member class with it
    a, b = (0.0, 0.0), (2.8, 0.0)
    c_obtuse = (1.4, 1.4 / math.tan(math.radians(50)))
    c_acute = (1.4, -1.4 / math.tan(math.radians(35)))
    pts = np.array([a, b, c_obtuse, c_acute])
    t = build_delone(pts, Window((-50, -50, 50, 50)))
    g = build_obtuse_digraph(t)
    assert g.n_edges == 1
    src = int(np.nonzero(g.out_edge >= 0)[0][0])
    assert g.obtuse[src]
    forest = form_groups(g, t, min_nonobtuse_area(t))
    sizes = sorted(len(c.members) for c in forest.classes)
    assert sizes == [2]
    assert forest.classes[0].case == 3


def test_random_ensembles_certificates():
    count = 0
    for seed in range(12):
        if seed % 3 == 0:
            pts, dom = generators.poisson_disk_torus(1.0, 16.0, 16.0, seed=seed)
        elif seed % 3 == 1:
            pts, dom = generators.square_lattice(2.0, 6, 6)
            pts = generators.jitter(pts, 0.28, seed=seed, domain=dom)
        else:
            pts, dom = generators.triangular_lattice(2.0, 6, 6)
            pts = generators.jitter(pts, 0.3, seed=seed, domain=dom)
        t = build_delone(pts, dom)
        radii = rr_radii(t)
        if radii.ratio > RATIO_LIMIT:
            continue
        rep = average_area_certificate(t)
        assert rep.passed, rep.violations
        assert rep.mean_area >= rep.bound - 1e-9 * (2 * rep.r) ** 2
        assert not rep.alt_reading_divergence
        count += 1
    assert count >= 8


def test_window_mode_has_exclusions_without_failures():
    rng = np.random.default_rng(23)
    pts = rng.uniform(0, 40, size=(500, 2))
    t = build_delone(pts, Window((8, 8, 32, 32), margin=8))
    radii = rr_radii(t)
    if radii.ratio <= RATIO_LIMIT:
        rep = average_area_certificate(t)
        assert rep.passed, rep.violations


def test_ratio_exceeded_raises():
    pts, dom = generators.rectangular_lattice(2.0, 2.0, 6, 6)
    keep = [
        i
        for i, p in enumerate(pts)
        if not (2.0 <= p[0] <= 6.0 and 2.0 <= p[1] <= 8.0)
    ]
    t = build_delone(pts[keep], dom)
    radii = rr_radii(t)
    assert radii.ratio > RATIO_LIMIT
    with pytest.raises(RatioExceeded):
        average_area_certificate(t)
    rep = average_area_certificate(t, allow_ratio_exceeded=True)
    assert rep.ratio > RATIO_LIMIT


def test_fixed_triangle_lattice_mean_equals_v0():
    # every triangle of the lattice triangulation is congruent to the
    # generator, so the interior mean equals V0 exactly
    p, q, r = (0.0, 0.0), (2.2, 0.0), (0.7, 2.0)
    pts, dom = generators.triangle_lattice_points(p, q, r, reps=7)
    t = build_delone(pts, dom)
    assert t.interior.sum() > 50
    rep = average_area_certificate(t)
    assert rep.passed
    area = 0.5 * abs(2.2 * 2.0)
    assert rep.v0 == pytest.approx(area, rel=1e-12)
    assert rep.mean_area == pytest.approx(area, rel=1e-9)
