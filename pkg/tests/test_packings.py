import math

import numpy as np
import pytest

from delonepack.packings import (
    OutOfRange,
    density_planar_strings_limit,
    cell_density,
    rhombic_prism_construction,
    density_ball_4d,
    density_planar_strings,
    density_string_3d,
    lattice_layer_4d,
    lattice_string_3d,
    lattice_string_3d_tetrahedral,
    measured_density,
    planar_construction,
    verify_packing,
)

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)


def test_density_string_3d_values():
    assert density_string_3d(1.0) == pytest.approx(math.pi / math.sqrt(18), abs=1e-15)
    assert density_string_3d(SQRT2) == pytest.approx(math.pi / math.sqrt(18), rel=1e-15)
    assert density_string_3d(1.2) == pytest.approx(
        math.pi / (3 * 1.2 * math.sqrt(1.56)), rel=1e-15
    )
    with pytest.raises(OutOfRange):
        density_string_3d(0.9)
    with pytest.raises(OutOfRange):
        density_string_3d(1.5)


def test_density_planar_limits():
    target = math.pi / math.sqrt(12)
    assert density_planar_strings_limit("lower") == pytest.approx(target, abs=1e-12)
    assert density_planar_strings_limit("upper") == pytest.approx(target, abs=1e-12)
    # interior values approach the limits monotonically from above
    assert density_planar_strings(SQRT3 + 1e-6) == pytest.approx(target, abs=1e-3)
    assert density_planar_strings(2 - 1e-6) == pytest.approx(target, abs=1e-2)
    assert density_planar_strings(1.9) == pytest.approx(
        2 * math.pi / (1.9 * (math.sqrt(4 - 1.9**2) + 1.9 * SQRT3)), rel=1e-15
    )


def test_density_ball_4d():
    v = density_ball_4d()
    assert v.value == math.pi**2 / 16
    assert v.expr == "pi^2/16"


def test_string_lattice_density_and_packing():
    for d in (1.0, 1.15, 1.3, SQRT2):
        basis = lattice_string_3d(d)
        assert cell_density(basis) == pytest.approx(density_string_3d(d), rel=1e-12)
        chk = verify_packing(basis, window_radius=12.0)
        assert chk.passed
        assert chk.min_center_distance == pytest.approx(2.0, abs=1e-9)


def test_two_lattice_presentations_agree():
    for d in (1.0, 1.2, 1.38, SQRT2):
        v1 = lattice_string_3d(d).cell_volume
        v2 = lattice_string_3d_tetrahedral(d).cell_volume
        assert v1 == pytest.approx(v2, rel=1e-12)
        chk = verify_packing(lattice_string_3d_tetrahedral(d), window_radius=10.0)
        assert chk.passed and chk.min_center_distance == pytest.approx(2.0, abs=1e-9)


def test_shrunk_lattice_fails():
    basis = lattice_string_3d(1.3)
    from delonepack.packings import LatticeBasis

    bad = LatticeBasis(vectors=0.99 * basis.vectors, description="shrunk")
    chk = verify_packing(bad, window_radius=10.0)
    assert not chk.passed


def test_planar_construction_geometry():
    d = 1.9
    place = planar_construction(d)
    h = math.sqrt(4 - d * d)
    c1 = place.lattice.vectors[1]
    assert c1[1] == pytest.approx((SQRT3 * d + h) / 2, rel=1e-12)
    assert c1[1] == pytest.approx(1.9576982, abs=5e-7)
    # |A1 C1| = |B0 C1| = 2 by construction
    a1 = np.array([2 * d, 0.0])
    b0 = place.offsets[1]
    assert np.linalg.norm(c1 - a1) == pytest.approx(2.0, rel=1e-12)
    assert np.linalg.norm(c1 - b0) == pytest.approx(2.0, rel=1e-12)
    chk = verify_packing(place, window_radius=18.0)
    assert chk.passed and chk.n_centers >= 200
    assert chk.min_center_distance == pytest.approx(2.0, abs=1e-9)
    assert cell_density(place) == pytest.approx(density_planar_strings(d), rel=1e-12)


def test_planar_measured_density_converges():
    d = 1.8
    place = planar_construction(d)
    target = density_planar_strings(d)
    est = measured_density(place, window_radius=600.0)
    assert est == pytest.approx(target, abs=1e-3)


def test_layer_4d_lattice():
    basis = lattice_layer_4d()
    assert cell_density(basis) == pytest.approx(math.pi**2 / 16, rel=1e-12)
    chk = verify_packing(basis, window_radius=6.0)
    assert chk.passed and chk.min_center_distance == pytest.approx(2.0, abs=1e-9)


def test_conjecture_construction():
    delta0, basis0, dens0 = rhombic_prism_construction(SQRT2)
    assert delta0 == pytest.approx(0.0, abs=1e-12)
    assert dens0 == pytest.approx(math.pi / math.sqrt(18), rel=1e-12)
    for d in (1.42, 1.45, 1.5):
        delta, basis, dens = rhombic_prism_construction(d)
        assert delta == pytest.approx(math.asin((d * d - 2) / 2) / 2, rel=1e-12)
        assert dens == pytest.approx((4 * math.pi / 3) / (4 * d * math.cos(2 * delta)), rel=1e-12)
        assert cell_density(basis) == pytest.approx(dens, rel=1e-12)
        # the shear restores touching: 4 = 2 (cos d - sin d)^2 + d^2
        assert 2 * (math.cos(delta) - math.sin(delta)) ** 2 + d * d == pytest.approx(4.0, abs=1e-12)
        chk = verify_packing(basis, window_radius=12.0)
        assert chk.passed and chk.min_center_distance == pytest.approx(2.0, abs=1e-9)
