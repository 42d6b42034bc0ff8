import json
import subprocess
import sys
from pathlib import Path

import pytest

from oscint.errors import ConfigError
from oscint.harness import ExperimentConfig, SuiteReport, load_config, run_suite
from oscint.quadrature import QuadConfig

SMALL_T6 = {
    "monic_trials": 40,
    "monic_max_degree": 4,
    "snd_trials": 100,
    "snd_degrees": [2],
    "etas": [0.1, 0.01],
    "family_k": 2,
    "young_trials": 20,
    "n_grid": 2000,
}


def small_t6_config() -> ExperimentConfig:
    return ExperimentConfig(suite="T6", seed=7, options=dict(SMALL_T6))


def test_default_configs_load():
    for sid in ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "H-LOG"):
        cfg = load_config(sid)
        assert cfg.suite == sid
        assert cfg.seed == 20260809
        assert cfg.quad.phase_variation_cap == pytest.approx(2.8)


def test_unknown_suite_rejected():
    with pytest.raises(ConfigError):
        load_config("T9")


def test_include_merge(tmp_path):
    (tmp_path / "base.json").write_text(json.dumps(
        {"seed": 5, "options": {"a": 1, "grid": {"lo": 1, "hi": 100}}}))
    (tmp_path / "own.json").write_text(json.dumps(
        {"suite": "T6", "include": ["base.json"],
         "options": {"grid": {"hi": 10.0}, "b": 2}}))
    from oscint.harness import _load_json_with_includes

    data = _load_json_with_includes(tmp_path / "own.json")
    assert data["seed"] == 5
    assert data["options"]["grid"] == {"lo": 1, "hi": 10.0}
    assert data["options"]["a"] == 1 and data["options"]["b"] == 2


def test_malformed_json_reports_line(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"suite": "T6",\n  "seed": }')
    with pytest.raises(ConfigError, match="line 2"):
        load_config("T6", str(bad))


def test_rerun_byte_identical_csv():
    rep1 = run_suite(small_t6_config())
    rep2 = run_suite(small_t6_config())
    assert rep1.csv_body() == rep2.csv_body()
    assert rep1.passed


def test_report_written_and_recomputable(tmp_path):
    rep = run_suite(small_t6_config())
    csv_path, json_path = rep.write(tmp_path)
    body = csv_path.read_text()
    header = body.splitlines()[0].split(",")
    assert header == ["suite", "case", "lambda", "eps", "c", "value_re", "value_im",
                      "magnitude", "err_est", "bound", "delta_hat", "verdict"]
    doc = json.loads(json_path.read_text())
    assert doc["suite"] == "T6" and doc["passed"] is True
    assert doc["stamp"]["seed"] == 7
    # the monic verdict is recomputable from the rows alone
    lines = [ln.split(",") for ln in body.splitlines()[1:]]
    monic_rows = [ln for ln in lines if ln[1] == "monic_inclusion"]
    assert monic_rows and float(monic_rows[0][7]) == 0.0


def _run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "oscint.cli", *args],
        capture_output=True, text=True, timeout=300,
    )


def test_cli_integrate_example():
    out = _run_cli("integrate", "--family", "monomial", "--n", "2",
                   "--lambda", "100", "--interval", "0", "1")
    assert out.returncode == 0
    assert "value" in out.stdout and "error_estimate" in out.stdout
    # matches the Fresnel oracle magnitude
    mag = float(out.stdout.split("|value| = ")[1].splitlines()[0])
    assert mag == pytest.approx(0.08378682517, abs=1e-8)


def test_cli_sublevel():
    out = _run_cli("sublevel", "--family", "monomial", "--n", "1",
                   "--c", "0.5", "--eps", "0.1")
    assert out.returncode == 0
    assert float(out.stdout.split("measure = ")[1].splitlines()[0]) == pytest.approx(0.2, abs=1e-10)


def test_cli_certify_verify():
    out = _run_cli("certify", "--family", "monomial", "--n", "2",
                   "--poly", "0", "--poly", "0", "--poly", "0.5",
                   "--lambda", "10000", "--mode", "vdc", "--verify")
    assert out.returncode == 0
    assert "total_bound" in out.stdout and "sound = True" in out.stdout


def test_cli_fit(tmp_path):
    rows = ["lambda,magnitude"] + [f"{l},{l**-0.5}" for l in
                                   (1e2, 3e2, 1e3, 3e3, 1e4, 3e4, 1e5, 3e5, 1e6)]
    p = tmp_path / "mags.csv"
    p.write_text("\n".join(rows) + "\n")
    out = _run_cli("fit", str(p))
    assert out.returncode == 0
    assert "delta_hat = 0.5000" in out.stdout


def test_cli_malformed_config_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope}")
    out = _run_cli("suite", "T6", "--config", str(bad))
    assert out.returncode == 2


def test_cli_estimate_b():
    out = _run_cli("estimate-b", "--degree", "1", "--trials", "100", "--seed", "1")
    assert out.returncode == 0
    assert "B(1) = 1.0" in out.stdout


def test_cli_suite_small(tmp_path):
    cfg = {"suite": "T6", "seed": 7, "options": dict(SMALL_T6)}
    p = tmp_path / "t6_small.json"
    p.write_text(json.dumps(cfg))
    out = _run_cli("suite", "T6", "--config", str(p), "--out", str(tmp_path / "rep"))
    assert out.returncode == 0, out.stderr
    assert "[PASS]" in out.stdout
    assert (tmp_path / "rep" / "t6_rows.csv").exists()


def test_threads_env_respected(monkeypatch):
    monkeypatch.setenv("OSCINT_THREADS", "1")
    rep = run_suite(small_t6_config())
    assert rep.passed
