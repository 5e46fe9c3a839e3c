import math

import numpy as np
import pytest

from delonepack.geom import triangle_metrics
from delonepack.lemma_cases import (
    _evaluate_4_2,
    _flank_base_from_legs,
    _flank_over_base,
    _hub_from_sides,
)
from delonepack.oracles import (
    PENTAGON_MIN,
    OracleError,
    case_ids,
    run_case,
    section6_values,
    verify_all,
)

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)
SQRT7 = math.sqrt(7)


def test_registry_has_sixteen_cases():
    ids = case_ids()
    assert len(ids) == 16
    assert ids == [
        "3.1", "3.2", "3.3", "3.4", "3.5", "3.6", "3.7", "3.8", "3.9", "3.10",
        "4.1", "4.2", "4.3", "4.4", "4.5", "4.6",
    ]


def test_unknown_case_raises():
    with pytest.raises(OracleError):
        run_case("9.9")
    with pytest.raises(OracleError):
        run_case("3.2", resolution="ultra")


def test_case_3_2_sharp_values():
    rep = run_case("3.2", resolution="coarse")
    assert rep.passed
    by_name = {p.name: p for p in rep.parts}
    assert by_name["3.2(1)"].found_min == pytest.approx((SQRT7 + SQRT3) / 8, abs=1e-9)
    assert by_name["3.2(2)"].found_min == pytest.approx(0.5, abs=1e-9)
    assert by_name["3.2(3)"].found_min == pytest.approx(SQRT7 / 8, abs=1e-9)


def test_case_4_1_equality_configuration():
    rep = run_case("4.1", resolution="coarse")
    assert rep.passed
    part = rep.parts[0]
    assert part.found_min == pytest.approx(1.0, abs=1e-9)
    assert part.argmin == pytest.approx([1.0, 1.0, math.pi / 2, 1.0, 1.0], abs=1e-6)


def test_claimed_configuration_matches_geom_module():
    # rebuild the 4.2-first equality configuration as explicit coordinates and
    # cross-check every quantity against the scalar geometry kernel
    b1 = c1 = a2 = c2 = 1.0
    alpha1 = beta2 = math.pi / 2
    a = _flank_base_from_legs(np.array([b1]), np.array([c1]), np.array([alpha1]))[0]
    b = _flank_base_from_legs(np.array([a2]), np.array([c2]), np.array([beta2]))[0]
    c = 1.0
    hub = _hub_from_sides(np.array([a]), np.array([b]), np.array([c]))
    m = triangle_metrics((0.0, 0.0), (a, 0.0), (float(hub.ax[0]), float(hub.ay[0])))
    assert m.area == pytest.approx(float(hub.area[0]), rel=1e-12)
    assert m.circumradius == pytest.approx(float(hub.R[0]), rel=1e-12)
    assert sorted(m.sides) == pytest.approx(sorted([a, b, c]), rel=1e-12)
    ap, area, rr, valid = _flank_over_base(np.array([a]), np.array([c1]), np.array([b1]))
    assert valid[0]
    assert ap[0] == pytest.approx(math.pi / 2, abs=1e-12)
    assert area[0] == pytest.approx(0.5, abs=1e-12)
    total, mask = _evaluate_4_2(1.0)(
        np.array([[b1, c1, alpha1, a2, c2, beta2, c]])
    )
    assert mask[0]
    assert total[0] == pytest.approx(SQRT7 / 4 + 1.0, rel=1e-12)


def test_case_4_6_equality_characterization():
    rep = run_case("4.6", resolution="coarse")
    part = rep.parts[0]
    assert part.passed
    # equality only at unit legs, right flank apexes, gamma = 2 pi / 3
    assert part.argmin == pytest.approx(
        [1.0, 1.0, math.pi / 2, 1.0, 1.0, math.pi / 2, 2 * math.pi / 3], abs=1e-6
    )


def test_verify_all_threaded_matches_sequential(monkeypatch):
    from delonepack.reporting import canonical_json

    seq = verify_all(resolution="coarse")
    monkeypatch.setenv("DELONE_PACK_THREADS", "4")
    par = verify_all(resolution="coarse")
    assert canonical_json(seq["reports"]) == canonical_json(par["reports"])
    assert canonical_json(seq["constants"]) == canonical_json(par["constants"])


def test_case_4_6_negative_control():
    rep = run_case("4.6", radius_bound=1.8, resolution="coarse")
    assert not rep.passed
    assert rep.parts[0].found_min < 1.0 + SQRT3 / 2 - 2e-3


def test_case_4_4_radius_variants():
    rep = run_case("4.4", radius_bound="sqrt5over2", resolution="coarse")
    assert rep.passed
    assert rep.parts[0].found_min == pytest.approx(0.5, abs=1e-6)


def test_determinism():
    r1 = run_case("3.2", resolution="coarse").to_json_dict()
    r2 = run_case("3.2", resolution="coarse").to_json_dict()
    assert r1 == r2


def test_section6_values():
    info = section6_values()
    totals = info["totals"]
    assert totals["both_right_apexes"] == pytest.approx(1.8, abs=1e-12)
    assert totals["one_right_one_cyclic"] == pytest.approx(2.0, abs=1e-12)
    assert totals["both_cyclic"] == pytest.approx(2.328, abs=1e-3)
    assert all(v > info["all_above"] for v in totals.values())
    # the recomputed totals exceed the printed note values by the cyclic
    # part's R^2/2 = 5/4 prefactor
    assert totals["one_right_one_cyclic"] - 0.5 == pytest.approx(
        1.25 * (1.7 - 0.5), abs=1e-9
    )
    assert totals["both_cyclic"] == pytest.approx(1.25 * 1.86245, abs=1e-4)


def test_verify_all_coarse():
    summary = verify_all(resolution="coarse")
    assert summary["pass"], {
        cid: r for cid, r in summary["reports"].items() if not r["pass"]
    }
    expected = {
        "3.2(1)": 0.547225,
        "3.2(2)": 0.5,
        "3.2(3)": 0.330719,
        "3.6": PENTAGON_MIN,
        "3.7": 1.4048,
        "3.8": 2.397712,
        "3.10": 1.8720,
        "4.1": 1.0,
        "4.2-first": 1.661438,
        "4.2-second": PENTAGON_MIN,
        "4.3": 2.051196,
        "4.4-sqrt2": 0.547225,
        "4.4-sqrt5over2": 0.5,
        "4.5": 1.047225,
        "4.6": 1.866025,
    }
    for name, value in expected.items():
        assert summary["constants"][name] == pytest.approx(value, abs=2e-3), name
