"""Command-line interface tests: config handling, formats, determinism."""

import json
import subprocess
import sys

import pytest
import yaml

from godel_c60.cli import RunConfig, _parse_sweep, main


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "godel_c60.cli", *args],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def test_config_round_trip():
    cfg = RunConfig(alpha=0.8, omega=0.12, sites=12, mmax=2.5, sweep="flux:0:1:5")
    text = yaml.safe_dump(cfg.to_dict())
    again = RunConfig.from_dict(yaml.safe_load(text))
    assert again == cfg


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError):
        RunConfig.from_dict({"alpha": 1.0, "spin": 2})


def test_config_validation():
    with pytest.raises(ValueError):
        RunConfig(alpha=-1.0)
    with pytest.raises(ValueError):
        RunConfig(sites=10)  # not a multiple of 4
    with pytest.raises(ValueError):
        RunConfig(mmax=0.3)
    with pytest.raises(ValueError):
        RunConfig(format="xml")
    with pytest.raises(ValueError):
        RunConfig(sweep="alpha:0:1")  # missing count


def test_sweep_parsing():
    param, values = _parse_sweep("omega:0:0.2:5")
    assert param == "omega"
    assert values == pytest.approx([0.0, 0.05, 0.1, 0.15, 0.2])
    param, values = _parse_sweep("flux:0.01:1:3:log")
    assert values[0] == pytest.approx(0.01) and values[2] == pytest.approx(1.0)
    assert values[1] == pytest.approx(0.1)
    _, single = _parse_sweep("alpha:0.5:0.9:1")
    assert single == [0.5]
    with pytest.raises(ValueError):
        _parse_sweep("beta:0:1:5")
    with pytest.raises(ValueError):
        _parse_sweep("flux:-1:1:5:log")


def test_csv_output_shape(tmp_path):
    out = tmp_path / "spec.csv"
    code = main([
        "spectrum", "--preset", "c60", "--nmax", "1", "--mmax", "0.5",
        "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[0].startswith("# godel-c60 v")
    assert "schema=spectrum-1" in lines[0]
    header = lines[1].split(",")
    assert header[:4] == ["n", "m", "alpha", "Omega"]
    assert len(lines) == 2 + 2 * 2  # two n values x two m values
    # numeric cells survive a text round trip bit-exactly
    row = lines[2].split(",")
    eps = float(row[header.index("eps_plus")])
    assert format(eps, ".17g") == row[header.index("eps_plus")]


def test_structured_output_carries_config_and_version(tmp_path):
    out = tmp_path / "spec.json"
    code = main([
        "spectrum", "--preset", "c60", "--nmax", "0", "--mmax", "0.5",
        "--format", "structured", "--out", str(out),
    ])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["schema"] == "spectrum-1"
    assert doc["command"] == "spectrum"
    assert doc["version"]
    assert doc["config"]["sites"] == 12
    assert doc["config"]["alpha"] == 1.0
    assert len(doc["rows"]) == 2
    assert set(doc["columns"]) <= set(doc["rows"][0])


def test_flags_override_config_file(tmp_path):
    cfgfile = tmp_path / "run.yaml"
    cfgfile.write_text(yaml.safe_dump({"alpha": 0.8, "nmax": 1, "mmax": 0.5}))
    out = tmp_path / "o.json"
    code = main([
        "spectrum", "--config", str(cfgfile), "--alpha", "1.2",
        "--format", "structured", "--out", str(out),
    ])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["config"]["alpha"] == 1.2  # flag wins
    assert doc["config"]["nmax"] == 1  # file value survives


def test_preset_bundles_are_overridable(tmp_path):
    out = tmp_path / "o.json"
    main([
        "spectrum", "--preset", "c60", "--alpha", "0.9", "--nmax", "0",
        "--mmax", "0.5", "--format", "structured", "--out", str(out),
    ])
    doc = json.loads(out.read_text())
    assert doc["config"]["sites"] == 12
    assert doc["config"]["alpha"] == 0.9


def test_usage_errors_exit_one():
    code, _, err = run_cli("spectrum", "--no-such-flag")
    assert code == 1
    code, _, err = run_cli("spectrum", "--sweep", "beta:0:1:5")
    assert code == 1
    assert "sweep" in err


def test_bad_config_file_exits_one(tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text("unknown_key: 3\n")
    code, _, err = run_cli("spectrum", "--config", str(bad))
    assert code == 1
    assert "unknown" in err


def test_sweep_output_is_deterministic_across_jobs(tmp_path):
    args = [
        "spectrum", "--preset", "c60", "--sweep", "omega:0:0.2:4",
        "--nmax", "1", "--mmax", "1.5",
    ]
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert main([*args, "--jobs", "1", "--out", str(a)]) == 0
    assert main([*args, "--jobs", "3", "--out", str(b)]) == 0
    # the worker pool must not reorder sweep points
    assert a.read_bytes() == b.read_bytes()


def test_current_row_schema(tmp_path):
    out = tmp_path / "c.csv"
    code = main([
        "current", "--preset", "c60", "--flux", "0.9", "--omega", "0.05",
        "--nmax", "2", "--mmax", "2.5", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[1] == "Phi_B,I_analytic,I_printed,I_fd,n_levels_used,warnings"
    assert len(lines) == 3


def test_causality_sweep(tmp_path):
    out = tmp_path / "caus.csv"
    code = main([
        "causality", "--omega", "1.0", "--sweep", "l2:-1:1.2:5", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert lines[1] == "Omega,l2,causal_class,curvature_class,critical_radii"
    assert len(lines) == 7
    classes = [ln.split(",")[2] for ln in lines[2:]]
    assert "alternating_regions" in classes
    assert "no_ctc" in classes


def test_version_flag():
    code, out, _ = run_cli("--version")
    assert code == 0
    assert out.startswith("godel-c60 ")


def test_env_jobs_must_be_integer(tmp_path, monkeypatch):
    monkeypatch.setenv("GODEL_C60_JOBS", "many")
    code = main(["spectrum", "--nmax", "0", "--mmax", "0.5", "--out", str(tmp_path / "x.csv")])
    assert code == 1
