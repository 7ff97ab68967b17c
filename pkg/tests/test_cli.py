import csv
import json
from fractions import Fraction

import pytest

from projevolute.cli import run
from projevolute.config import RunConfig, default_ode_tol
from projevolute.serialize import format_scalar, parse_polygon


def test_pentagon_map_prints_image_and_invariant(capsys):
    assert run(["pentagon", "map", "--x", "3", "--y", "4", "--iters", "1"]) == 0
    out = capsys.readouterr().out
    assert "P=(3, 4), I=40/3" in out
    assert "T=(-20/21, 1/6), I=-3/40" in out


def test_pentagon_map_degenerate_input(capsys):
    assert run(["pentagon", "map", "--x", "-2", "--y", "1"]) == 1
    assert "x+y+1=0" in capsys.readouterr().out


def test_pentagon_singular(capsys):
    assert run(["pentagon", "singular"]) == 0
    out = capsys.readouterr().out
    assert "0, (11-5*sqrt(5))/2, (11+5*sqrt(5))/2" in out
    assert "11.090169943749" in out and "-0.090169943749" in out


def test_frieze_command(capsys):
    assert run(["frieze", "--x", "3", "--y", "4"]) == 0
    out = capsys.readouterr().out
    assert "3  5/3  1  4  2/3" in out
    assert "prod a_i = 40/3" in out and "sum a_i + 3 = 40/3" in out


def test_verify_command(capsys):
    assert run(["verify", "--count", "50", "--seed", "7"]) == 0
    assert "all exact identities passed" in capsys.readouterr().out


def test_usage_errors_exit_two(capsys):
    assert run(["bogus"]) == 2
    assert run(["pentagon", "map", "--x", "abc", "--y", "1"]) == 2
    assert run(["pentagon", "conjugacy", "--r", "1", "--exact"]) == 2
    capsys.readouterr()


def test_hexagon_f_and_step(capsys):
    assert run(["hexagon", "f", "--a", "3", "--b", "0", "--iters", "2"]) == 0
    out = capsys.readouterr().out
    assert "1: (a, b) = (5/8, 1)" in out and "2: (a, b) = (-16/39, inf)" in out
    assert run(["hexagon", "step", "--coords", "2,3,1/2,5/2"]) == 0
    assert "(A, B, C, D)" in capsys.readouterr().out


def test_evolute_polygon_json(tmp_path, capsys):
    poly = tmp_path / "p.json"
    poly.write_text(json.dumps({"vertices": [["0", "-1", "1"], ["1", "0", "0"], ["0", "1", "0"],
                                             ["-1", "0", "1"], ["3", "4", "1"]]}))
    svg = tmp_path / "p.svg"
    assert run(["evolute", "--polygon", str(poly), "--svg", str(svg)]) == 0
    assert "[-6 : -6 : 1]" in capsys.readouterr().out
    assert svg.read_text().startswith("<svg")


def test_polygon_json_rejects_mixed_entries():
    with pytest.raises(ValueError):
        parse_polygon({"vertices": [["0", 1, "1"]] * 5})
    assert parse_polygon({"vertices": [[0.0, -1.0, 1.0], [1, 0, 0], [0, 1, 0], [-1, 0, 1], [3, 4, 1]]}).exact is False


def test_levelset_csv_and_svg(tmp_path, capsys):
    out_csv, out_svg = tmp_path / "ls.csv", tmp_path / "ls.svg"
    args = ["pentagon", "levelset", "--r", "12", "--r", "1", "--samples", "20", "--csv", str(out_csv),
            "--svg", str(out_svg)]
    assert run(args) == 0
    rows = list(csv.DictReader(out_csv.open()))
    assert rows[0].keys() >= {"schema", "component_id", "kind", "x", "y", "theta"}
    assert {r["schema"] for r in rows} == {"1"}
    assert {r["kind"] for r in rows if r["r"] == "12"} == {"bounded", "unbounded"}
    assert out_svg.read_text().count("I = ") == 2
    first = out_csv.read_bytes()
    assert run(args) == 0
    assert out_csv.read_bytes() == first
    capsys.readouterr()


def test_conjugacy_json(tmp_path, capsys):
    path = tmp_path / "c.json"
    assert run(["pentagon", "conjugacy", "--r", "1", "--points", "8", "--tol", "1e-6", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["passed"] is True and data["r"] == 1.0
    assert set(data["samples"][0]) == {"x", "y", "theta", "theta_image", "residual"}
    assert data["config"]["mode"] == "approx"
    capsys.readouterr()


def test_hexagon_orbit_outputs_are_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    base = ["hexagon", "orbit", "--seed", "5", "--iters", "5", "--starts", "4"]
    assert run(base + ["--csv", str(a), "--svg", str(tmp_path / "h.svg"), "--json", str(tmp_path / "h.json")]) == 0
    assert run(base + ["--csv", str(b), "--workers", "3"]) == 0
    assert a.read_bytes() == b.read_bytes()
    summary = json.loads((tmp_path / "h.json").read_text())
    assert summary["config"]["seed"] == 5 and summary["summary"]["starts"] == 4
    capsys.readouterr()


def test_scalar_formatting():
    assert format_scalar(Fraction(-20, 21)) == "-20/21"
    assert format_scalar(Fraction(4)) == "4"
    assert format_scalar(0.1) == "0.10000000000000001"


def test_env_override_of_ode_tolerance(monkeypatch):
    monkeypatch.setenv("EVOLUTE_DEFAULT_TOL", "1e-8")
    assert default_ode_tol() == 1e-8
    monkeypatch.setenv("EVOLUTE_DEFAULT_TOL", "0")
    with pytest.raises(ValueError):
        default_ode_tol()


def test_config_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        RunConfig(ode_tol=-1.0)
    with pytest.raises(ValueError):
        RunConfig(exact=True).require_approx("flow times")
