import math

import numpy as np
import pytest

from delonepack.profiles import (
    CoveringViolated,
    HypothesisViolated,
    StringProfile,
    density_lower_bound,
    profile_from_spec,
    v0_of,
)

SQRT2 = math.sqrt(2)


def test_g_closed_form_values():
    p = StringProfile("string", d=1.0)
    assert p.g_value([0.0]) == pytest.approx(1.0, abs=1e-15)
    p2 = StringProfile("string", d=SQRT2)
    assert p2.g_value([SQRT2]) == pytest.approx(1 / SQRT2, rel=1e-12)
    sq = StringProfile("square_layer")
    assert sq.g_value([1.0, 1.0]) == pytest.approx(SQRT2 / 2, rel=1e-12)


def test_g_matches_definitional_search():
    rng = np.random.default_rng(2)
    for d in (1.0, 1.2, SQRT2):
        p = StringProfile("string", d=d)
        for _ in range(60):
            z = rng.uniform(-3 * d, 3 * d)
            assert p.g_value([z]) == pytest.approx(p.g_value_search([z]), abs=1e-9)
    for kind in ("square_layer", "tri_layer"):
        p = StringProfile(kind)
        for _ in range(40):
            w = rng.uniform(-3, 3, size=2)
            assert p.g_value(w) == pytest.approx(p.g_value_search(w), abs=1e-9)


def test_m_values():
    assert StringProfile("string", d=1.0).m_M()[0] == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert StringProfile("string", d=SQRT2).m_M()[0] == pytest.approx(1 / SQRT2, abs=1e-9)
    assert StringProfile("tri_layer").m_M()[0] == pytest.approx(math.sqrt(2.0 / 3.0), abs=1e-8)
    assert StringProfile("square_layer").m_M()[0] == pytest.approx(1 / SQRT2, abs=1e-8)
    # closed form: sqrt(4 - covering_radius^2)/2
    for p in (StringProfile("string", d=1.3), StringProfile("tri_layer")):
        m = p.m_M()[0]
        assert m == pytest.approx(math.sqrt(4 - p.covering_radius**2) / 2, abs=1e-8)


def test_m_hypothesis_violated():
    with pytest.raises(HypothesisViolated):
        StringProfile("string", d=1.5).m_M()


def test_covering_violated():
    with pytest.raises(CoveringViolated):
        StringProfile("string", d=2.5).g_value([2.5])


def test_v0_string_values():
    r1 = v0_of(StringProfile("string", d=1.0), resolution=128)
    assert r1.value == pytest.approx(SQRT2, abs=1e-8)
    assert sorted(r1.triple.sides) == pytest.approx(
        [math.sqrt(3), math.sqrt(3), 2.0], abs=1e-6
    )
    r2 = v0_of(StringProfile("string", d=SQRT2), resolution=128)
    assert r2.value == pytest.approx(1.0, abs=1e-8)
    assert r2.bracket[0] <= r2.value <= r2.bracket[1] + 1e-15
    assert r2.triple.side_ratio <= SQRT2 + 1e-9


def test_v0_string_sweep_closed_form():
    for d in np.linspace(1.0, SQRT2, 12):
        res = v0_of(StringProfile("string", d=float(d)), resolution=96)
        assert res.value == pytest.approx(math.sqrt(3 - d * d), abs=1e-6)


def test_v0_square_layer():
    res = v0_of(StringProfile("square_layer"), resolution=200)
    assert res.value == pytest.approx(1.0, abs=1e-6)


def test_density_lower_bound_string_matches_exact():
    for d in (1.0, 1.1, 1.3, SQRT2):
        p = StringProfile("string", d=d)
        bound = density_lower_bound(p)
        exact = math.pi / (3 * d * math.sqrt(3 - d * d))
        assert bound == pytest.approx(exact, rel=1e-8)
        assert bound <= exact + 1e-9


def test_density_lower_bound_square_layer_is_d4():
    assert density_lower_bound(StringProfile("square_layer")) == pytest.approx(
        math.pi**2 / 16, rel=1e-8
    )


def test_custom_profile_roundtrip():
    # constant radius 1 on a period-2 cell: a solid cylinder of radius 1;
    # two translates touch at horizontal separation 2, so g == 1 everywhere
    p = profile_from_spec({"kind": "custom", "period": 2.0, "f_samples": [1.0] * 64})
    assert p.g_value([0.7]) == pytest.approx(1.0, abs=1e-9)
    m, M = p.m_M(resolution=64)
    assert m == pytest.approx(1.0, abs=1e-9)
    assert M == pytest.approx(1.0, abs=1e-9)


def test_custom_concave_profile():
    # radius dips to 0.8 between balls: g(period/2) = (1 + 0.8)/2 at worst
    period = 2.0
    t = np.linspace(0, period, 128, endpoint=False)
    f = 1.0 - 0.2 * (1 - np.cos(2 * np.pi * t / period)) / 2
    p = StringProfile("custom", period=period, f_samples=f)
    g_half = p.g_value([period / 2])
    assert 0.8 <= g_half <= 1.0
    res = v0_of(p, resolution=96)
    assert res.value <= math.sqrt(3) + 1e-9  # no larger than the unit-ball case
    bound = density_lower_bound(p)
    assert bound > 0
