import json
import math

import numpy as np
import pytest

from delonepack.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_group_square_lattice(capsys, tmp_path):
    out = tmp_path / "report.json"
    csv_path = tmp_path / "classes.csv"
    svg_path = tmp_path / "mesh.svg"
    code, payload = run_cli(
        capsys,
        "group",
        "--lattice",
        "square",
        "--side",
        "2",
        "--out",
        str(out),
        "--csv",
        str(csv_path),
        "--svg",
        str(svg_path),
    )
    assert code == 0
    assert payload["pass"]
    assert payload["mean_area"] == pytest.approx(2.0, abs=1e-9)
    assert payload["bound"] == pytest.approx(2.0, abs=1e-9)
    assert out.exists() and json.loads(out.read_text())["pass"]
    assert csv_path.read_text().startswith("case,size,mean_area")
    assert svg_path.stat().st_size > 1000


def test_group_points_csv(capsys, tmp_path):
    rng = np.random.default_rng(7)
    pts = rng.uniform(0, 24, size=(220, 2))
    f = tmp_path / "pts.csv"
    f.write_text("x,y\n" + "\n".join(f"{x},{y}" for x, y in pts))
    # uniform noise usually violates the ratio precondition: JSON + exit 1
    code, payload = run_cli(capsys, "group", "--points", str(f))
    assert payload["n_points"] == 220
    if code == 1:
        assert not payload["pass"]
        code2, payload2 = run_cli(
            capsys, "group", "--points", str(f), "--allow-ratio-exceeded"
        )
        assert "ratio" in payload2


def test_group_jittered_seeded(capsys):
    code, payload = run_cli(
        capsys,
        "group", "--lattice", "square", "--side", "2", "--jitter", "0.1", "--seed", "7",
    )
    assert code == 0 and payload["pass"]


def test_cli_determinism(capsys):
    argv = ["group", "--lattice", "square", "--side", "2", "--jitter", "0.15", "--seed", "3"]
    code1 = main(argv)
    out1 = capsys.readouterr().out
    code2 = main(argv)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2  # byte-identical JSON


def test_oracle_single_and_run_form(capsys):
    code, payload = run_cli(capsys, "oracle", "3.6", "--resolution", "coarse")
    assert code == 0
    assert payload["found_min"] == pytest.approx(1.720477, abs=2e-3)
    code, payload = run_cli(
        capsys, "oracle", "run", "--case", "4.4", "--resolution", "coarse",
        "--radius-bound", "sqrt5over2",
    )
    assert code == 0
    assert payload["parts"][0]["found_min"] == pytest.approx(0.5, abs=1e-6)


def test_oracle_negative_control_exit_code(capsys):
    code, payload = run_cli(
        capsys, "oracle", "4.6", "--resolution", "coarse", "--radius-bound", "1.8"
    )
    assert code == 1
    assert not payload["pass"]


def test_density_commands(capsys):
    code, payload = run_cli(capsys, "density", "string3d", "--d", "1")
    assert code == 0
    assert payload["density_closed_form"] == pytest.approx(math.pi / math.sqrt(18), rel=1e-12)
    assert payload["packing_pass"] and payload["min_distance"] == pytest.approx(2.0, abs=1e-9)
    code, payload = run_cli(capsys, "density", "ball4d", "--window-radius", "6")
    assert code == 0
    assert payload["density_closed_form"] == pytest.approx(math.pi**2 / 16, rel=1e-12)
    assert payload["expression"] == "pi^2/16"


def test_construct_conjecture(capsys):
    code, payload = run_cli(
        capsys, "construct", "conjecture210", "--d", "1.45", "--window-radius", "10"
    )
    assert code == 0
    assert payload["conjecture"] is True
    assert "CONJECTURE" in payload["status"]
    assert payload["delta"] == pytest.approx(math.asin((1.45**2 - 2) / 2) / 2, rel=1e-12)
    assert payload["packing_pass"]


def test_planar_proof_command(capsys, tmp_path):
    svg = tmp_path / "regions.svg"
    code, payload = run_cli(
        capsys, "planar-proof", "--d", "1.9", "--resolution", "coarse", "--svg", str(svg)
    )
    assert code == 0 and payload["pass"]
    assert svg.stat().st_size > 1000


def test_profile_command(capsys, tmp_path):
    spec = tmp_path / "profile.json"
    spec.write_text(json.dumps({"kind": "string", "d": 1.0}))
    code, payload = run_cli(capsys, "profile", "--spec", str(spec), "--resolution", "coarse")
    assert code == 0
    assert payload["m"] == pytest.approx(math.sqrt(3) / 2, abs=1e-8)
    assert payload["v0"] == pytest.approx(math.sqrt(2), abs=1e-6)
    assert payload["density_lower_bound"] == pytest.approx(math.pi / math.sqrt(18), rel=1e-6)
