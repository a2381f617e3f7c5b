"""Configuration parsing, report rendering, CLI subcommands, determinism."""

import json
import subprocess
import sys

import pytest

from revdeg.config import ConfigError, example_config_text, load_example, parse_config
from revdeg.report import parse_labeled_element, parse_rendered, run_analyze


def test_example_config_parses():
    cfg = load_example()
    assert cfg.group_kind == "dihedral" and cfg.group_n == 8
    assert cfg.delays_m == 1
    assert cfg.mu["plane"] == (-3,)
    assert cfg.domain is not None
    assert cfg.domain.published_grad_bounds == (4.0, 21.0)


def test_reversibility_violation_reported():
    raw = json.loads(example_config_text())
    raw["delays_m"] = 3
    raw["mu"]["plane"] = ["-3", "1", "2"]
    with pytest.raises(ConfigError) as ei:
        parse_config(json.dumps(raw))
    assert any("reversibility" in p for p in ei.value.problems)


def test_eta4_violation_reported():
    raw = json.loads(example_config_text())
    raw["domain"]["terms"] = [[2, 4, 0, "cos"], [1, 0, 0, "cos"]]  # eta(0) = 1
    with pytest.raises(ConfigError) as ei:
        parse_config(json.dumps(raw))
    assert any("origin" in p for p in ei.value.problems)


def test_unknown_selector_and_bad_mu_collected():
    raw = json.loads(example_config_text())
    raw["representation"][0]["irrep"] = "sideways"
    raw["mu"] = {"plane": ["-3", "oops"]}
    with pytest.raises(ConfigError) as ei:
        parse_config(json.dumps(raw))
    assert len(ei.value.problems) >= 2


def test_analyze_gates_on_geometry():
    doc = run_analyze(load_example(), skip_geometry=False)
    assert doc.exit_code == 20
    assert doc.degrees is None


def test_analyze_with_override_and_roundtrip(engine8):
    doc = run_analyze(load_example(), skip_geometry=True, engine=engine8)
    assert doc.exit_code == 0
    assert doc.watermark == "hypotheses unverified"
    om = doc.degrees.omega
    assert parse_labeled_element(engine8.lattice, om.labeled()).coeffs == om.coeffs
    assert parse_rendered(engine8.lattice, om.render()).coeffs == om.coeffs
    # machine output is valid JSON and echoes the certificates
    md = doc.machine_dict()
    assert len(md["degrees"]["certificates"]) == 3


def test_machine_output_deterministic(engine8):
    a = run_analyze(load_example(), skip_geometry=True, engine=engine8).machine_text()
    b = run_analyze(load_example(), skip_geometry=True, engine=engine8).machine_text()
    assert a == b


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "revdeg.cli", *args],
                          capture_output=True, text=True)


def test_cli_group_info():
    r = _cli("group-info")
    assert r.returncode == 0
    assert "38 classes" in r.stdout
    assert "D4dh" in r.stdout and "Z2m" in r.stdout


def test_cli_geometry_check_exit_code():
    r = _cli("geometry-check", "--grid", "512")
    assert r.returncode == 20  # honest A4 failure on the octagonal example


def test_cli_figure_data():
    r = _cli("figure-data", "--grid", "16")
    lines = r.stdout.strip().splitlines()
    assert lines[0] == "theta,boundary_r,kappa,grad_norm,grad_norm_plus_kappa"
    assert len(lines) == 17
    first = [float(v) for v in lines[1].split(",")]
    assert abs(first[1] - 1.0) < 1e-9 and abs(first[2] - 17.0) < 1e-6


def test_cli_burnside_mul():
    r = _cli("burnside-mul", "--left", "deg:0", "--right", "deg:0",
             "--truncation", "32")
    assert r.returncode == 0
    assert r.stdout.strip() == "(G)"


def test_cli_bad_config(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    r = _cli("analyze", "--config", str(p))
    assert r.returncode == 30


def test_cli_oracle_stability():
    r = _cli("oracle-stability", "--truncation", "32")
    assert r.returncode == 0
    assert "stability diff empty" in r.stdout
