import json
import math

import pytest

from orbitforge.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_area_prints_the_sharp_constants(capsys):
    code, out, _ = run_cli(capsys, "area", "--genus", "2")
    assert code == 0
    assert out.splitlines()[0] == "pi/2 4*pi 0.125"


def test_area_scales_with_genus(capsys):
    code, out, _ = run_cli(capsys, "area", "--genus", "3")
    assert code == 0
    assert out.splitlines()[0] == "pi 8*pi 0.125"


def test_area_json_report(capsys, tmp_path):
    out_path = tmp_path / "area.json"
    code, _, _ = run_cli(capsys, "area", "--genus", "2", "--format", "json",
                         "--out", str(out_path))
    assert code == 0
    payload = json.loads(out_path.read_text())
    names = {c["name"]: c for c in payload["checks"]}
    assert names["area bound"]["value"] == pytest.approx(math.pi / 2)
    assert names["octagon quadrature"]["pass"] is True
    assert all(c["pass"] for c in payload["checks"])


def test_area_rejects_low_genus(capsys):
    code, _, err = run_cli(capsys, "area", "--genus", "1")
    assert code == 2


def test_constants_csv_matches_recursion(capsys):
    code, out, _ = run_cli(capsys, "constants", "--curvature", "-8", "--kmax", "4")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,A_k,c_k"
    assert lines[1] == "0,1,"
    assert lines[2] == "1,0.5,0.5"
    assert lines[3] == "2,2.25,4.5"
    assert lines[4] == "3,28.125,12.5"
    assert lines[5].startswith("4,689.0625,24.5")


def test_carleman_csv_header_and_monotonicity(capsys):
    code, out, _ = run_cli(capsys, "carleman", "--curvature", "-8", "--nmax", "10000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "N,partial_sum,ratio"
    sums = [float(line.split(",")[1]) for line in lines[1:]]
    assert sums == sorted(sums)


def test_missing_parameter_is_a_config_error(capsys):
    code, _, err = run_cli(capsys, "carleman")
    assert code == 2
    assert "config error" in err


def test_conflicting_parameters_are_a_config_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--curvature", "-8",
                           "--series", "principal", "--value", "0.5")
    assert code == 2


def test_series_flag_requires_value(capsys):
    code, _, err = run_cli(capsys, "verify", "--series", "principal")
    assert code == 2


def test_verify_operators_suite_passes(capsys):
    code, out, err = run_cli(capsys, "verify", "--curvature", "-8", "--trunc", "32",
                             "--suite", "operators")
    assert code == 0
    payload = json.loads(out)
    assert payload["suite"] == "operators"
    assert all(c["pass"] for c in payload["checks"])
    assert "[pass]" in err


def test_verify_all_suites_pass_at_flagship_settings(capsys):
    code, out, _ = run_cli(capsys, "verify", "--curvature", "-8", "--trunc", "256",
                           "--suite", "all")
    assert code == 0
    payload = json.loads(out)
    assert all(c["pass"] for c in payload["checks"])
    assert len(payload["checks"]) > 20
    statements = {c["statement"] for c in payload["checks"]}
    assert "K = -8/(1 - 4 s^2)" in statements


def test_verify_fails_with_impossible_tolerance(capsys):
    code, out, _ = run_cli(capsys, "verify", "--curvature", "-8", "--trunc", "32",
                           "--suite", "carleman", "--nmax", "1000",
                           "--tolerance", "carleman_ratio=1e-12")
    assert code == 1
    payload = json.loads(out)
    assert not all(c["pass"] for c in payload["checks"])


def test_unknown_tolerance_is_config_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--curvature", "-8",
                           "--tolerance", "nope=1")
    assert code == 2
    assert "unknown tolerance" in err


def test_unknown_suite_is_config_error(capsys):
    code, _, err = run_cli(capsys, "verify", "--curvature", "-8", "--suite", "bogus")
    assert code == 2


def test_orbit_word_json_schema(capsys):
    word = json.dumps([{"basis": [0, 0, 1], "t": 1.2}])
    code, out, _ = run_cli(capsys, "orbit", "--curvature", "-8", "--trunc", "16",
                           "--word", word)
    assert code == 0
    payload = json.loads(out)
    assert payload["s"] == {"kind": "complementary", "value": 0.0}
    assert payload["N"] == 16
    point = payload["points"][0]
    assert (point["x"], point["y"]) == (0.0, 1.0)  # sigma3 fixes i
    coords = point["coords"]
    assert len(coords) == 33
    assert coords[16] == [1.0, 0.0]  # e_0 itself


def test_orbit_grid_csv_headers(capsys):
    code, out, _ = run_cli(capsys, "orbit", "--curvature", "-8", "--trunc", "16",
                           "--grid", "0,1;0.2,1.5", "--format", "csv")
    assert code == 0
    header = out.splitlines()[0].split(",")
    assert header[:2] == ["x", "y"]
    assert header[2] == "k_re_-16"
    assert header[3] == "k_im_-16"
    assert header[-2] == "k_re_16"
    assert header[-1] == "k_im_16"
    assert len(out.splitlines()) == 3


def test_orbit_requires_word_or_grid(capsys):
    code, _, err = run_cli(capsys, "orbit", "--curvature", "-8")
    assert code == 2


def test_spherical_csv(capsys):
    code, out, _ = run_cli(capsys, "spherical", "--curvature", "-8", "--trunc", "64",
                           "--t-max", "1.0", "--steps", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t,phi,orbit_coordinate,abs_error"
    assert len(lines) == 12


def test_flow_reports_drift(capsys):
    code, out, _ = run_cli(capsys, "flow", "--curvature", "-8", "--trunc", "32",
                           "--t-max", "0.5", "--steps", "200", "--frame-cols", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["unitarity_drift"] < 1e-6
    assert len(payload["column0"]) == 65


def test_flow_accepts_explicit_coframe(capsys):
    code, out, _ = run_cli(capsys, "flow", "--curvature", "-8", "--trunc", "32",
                           "--coframe", "0,0,1", "--t-max", "0.3", "--steps", "200",
                           "--frame-cols", "8")
    assert code == 0
    payload = json.loads(out)
    assert payload["coframe"] == [0.0, 0.0, 1.0]
    # vertical rotation keeps e_0 fixed
    assert payload["column0"][32] == pytest.approx([1.0, 0.0], abs=1e-9)


def test_flow_instability_maps_to_exit_1(capsys):
    code, _, err = run_cli(capsys, "flow", "--curvature", "-8", "--trunc", "64",
                           "--t-max", "1.0", "--steps", "3", "--frame-cols", "60")
    assert code == 1
    assert "drift" in err


def test_determinism_byte_identical_runs(capsys):
    args = ("spherical", "--curvature", "-8", "--trunc", "32", "--t-max", "1.0",
            "--steps", "50")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
    args = ("verify", "--curvature", "-4", "--trunc", "32", "--suite", "operators")
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_config_file_and_flag_precedence(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"curvature": -8.0, "trunc": 16, "kmax": 3}))
    code, out, _ = run_cli(capsys, "constants", "--config", str(cfg))
    assert code == 0
    assert len(out.strip().splitlines()) == 5  # header + k = 0..3
    # a flag overrides the file
    code, out, _ = run_cli(capsys, "constants", "--config", str(cfg), "--kmax", "2")
    assert code == 0
    assert len(out.strip().splitlines()) == 4


def test_config_file_rejects_unknown_keys(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"curvature": -8.0, "wibble": 1}))
    code, _, err = run_cli(capsys, "constants", "--config", str(cfg))
    assert code == 2
    assert "unknown config keys" in err


def test_svg_emission(capsys, tmp_path):
    out_path = tmp_path / "plot.svg"
    code, _, _ = run_cli(capsys, "carleman", "--curvature", "-8", "--nmax", "1000",
                         "--format", "svg", "--out", str(out_path))
    assert code == 0
    body = out_path.read_text()
    assert body.lstrip().startswith("<?xml")
    assert "<svg" in body
    out2 = tmp_path / "profile.svg"
    code, _, _ = run_cli(capsys, "spherical", "--curvature", "-8", "--trunc", "32",
                         "--t-max", "1.0", "--steps", "20", "--format", "svg",
                         "--out", str(out2))
    assert code == 0
    assert "<svg" in out2.read_text()
    out3 = tmp_path / "sweep.svg"
    code, _, _ = run_cli(capsys, "constants", "--curvature", "-8", "--format", "svg",
                         "--out", str(out3))
    assert code == 0
    assert "<svg" in out3.read_text()


def test_svg_requires_out_path(capsys):
    code, _, err = run_cli(capsys, "carleman", "--curvature", "-8", "--nmax", "1000",
                           "--format", "svg")
    assert code == 2


def test_trunc_floor(capsys):
    code, _, err = run_cli(capsys, "verify", "--curvature", "-8", "--trunc", "8")
    assert code == 2


def test_threads_env_does_not_change_output(capsys, monkeypatch):
    args = ("verify", "--curvature", "-8", "--trunc", "32", "--suite", "structure")
    _, out1, _ = run_cli(capsys, *args)
    monkeypatch.setenv("ORBITFORGE_THREADS", "4")
    _, out2, _ = run_cli(capsys, *args)
    assert out1 == out2
