import json

import pytest

from lcoguard import report
from lcoguard.cli import (ConfigError, dispatch, effective_system, main,
                          parse_config)
from lcoguard.stability import optimal_tuning


def run(args):
    return main([str(a) for a in args])


def test_missing_eps_exits_2(capsys, tmp_path):
    assert run(["tune", "--config", "{}"]) == 2
    assert "eps" in capsys.readouterr().err


def test_malformed_json_exits_2(capsys):
    assert run(["tune", "--config", "{not json"]) == 2
    assert "config error" in capsys.readouterr().err


def test_unknown_config_key_exits_2(capsys):
    assert run(["tune", "--config", '{"system": {"eps": 0.05}, "bogus": 1}']) == 2
    assert "bogus" in capsys.readouterr().err


def test_unknown_system_key_exits_2():
    assert run(["tune", "--config", '{"system": {"eps": 0.05, "mu9": 1}}']) == 2


def test_invalid_eps_exits_2():
    assert run(["tune", "--eps", "-0.05"]) == 2


def test_numerical_failure_exits_3(capsys, tmp_path):
    # undamped absorber has no Hopf point to analyze
    code = run(["normal-form", "--eps", "0.05", "--mu2", "0.0",
                "--gamma", "1.0", "--out", tmp_path / "nf.json"])
    assert code == 3
    assert "numerical failure" in capsys.readouterr().err


def test_bad_thread_env_exits_2(monkeypatch, capsys):
    monkeypatch.setenv("LCO_GUARD_THREADS", "zero")
    assert run(["tune", "--eps", "0.05"]) == 2
    monkeypatch.setenv("LCO_GUARD_THREADS", "2")
    assert run(["tune", "--eps", "0.05"]) == 0


def test_effective_system_defaults():
    sys = effective_system({"system": {"eps": 0.05}})
    tun = optimal_tuning(0.05)
    assert sys.mu2 == tun.mu2_opt and sys.gamma == tun.gamma_opt
    assert sys.mu1 == 0.0 and sys.alpha3 == 0.0


def test_tune_stdout(capsys):
    assert run(["tune", "--eps", "0.05"]) == 0
    out = capsys.readouterr().out
    assert "0.975900072949" in out and "0.111803398875" in out


def test_probability_csv_contract(tmp_path):
    out = tmp_path / "prob.csv"
    code = run(["probability", "--eps", "0.05", "--alpha3", "0.5",
                "--rule", "nltva", "--n-samples", "200", "--seed", "7",
                "--out", out])
    assert code == 0
    header, rows = report.read_csv(out)
    assert header == ["alpha3", "rule", "probability", "n_samples", "seed"]
    assert rows[0][1] == "nltva" and rows[0][4] == "7"


def test_metadata_rerun_is_bit_identical(tmp_path):
    out = tmp_path / "chart.csv"
    args = ["stability-chart", "--eps", "0.05", "--mu1-range", "0:0.12:7",
            "--mu2-range", "0.11", "--gamma-range", "0.9:1.05:7",
            "--out", out]
    assert run(args) == 0
    first = out.read_bytes()
    command, config = report.read_metadata(out)
    assert command == "stability-chart"
    # replaying the embedded config must reproduce the file exactly
    dispatch(command, config)
    assert out.read_bytes() == first


def test_simulate_csv_and_plot(tmp_path):
    out = tmp_path / "traj.csv"
    cfg = {"system": {"eps": 0.05, "mu1": 0.02, "gamma": 1.0},
           "t_end": 50.0, "n_samples": 200, "out": str(out)}
    assert run(["simulate", "--config", json.dumps(cfg), "--plot"]) == 0
    header, rows = report.read_csv(out)
    assert header == ["t", "x1", "x2", "x3", "x4"]
    assert len(rows) == 200
    assert (tmp_path / "traj.png").exists()


def test_reproduce_figure_rejects_unknown(tmp_path):
    assert run(["reproduce-figure", "4", "--out", tmp_path]) == 2
    assert run(["reproduce-figure", "10", "--panel", "c",
                "--out", tmp_path]) == 2


def test_parse_config_from_file(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text('{"system": {"eps": 0.05}}')
    assert parse_config(str(p)) == {"system": {"eps": 0.05}}
    with pytest.raises(ConfigError):
        parse_config('{"a": ')  # truncated inline JSON


def test_missing_config_file_exits_2(tmp_path, capsys):
    assert run(["tune", "--config", tmp_path / "nope.json"]) == 2
    assert "config error" in capsys.readouterr().err


def test_bifurcate_writes_branch_and_events(tmp_path):
    out = tmp_path / "branch.csv"
    cfg = {"system": {"eps": 0.05, "mu2": 0.12, "gamma": 0.985,
                      "alpha3": 0.3, "beta3": 0.018},
           "amp_max": 0.4, "max_steps": 30, "out": str(out)}
    assert run(["bifurcate", "--config", json.dumps(cfg)]) == 0
    header, rows = report.read_csv(out)
    assert header[:4] == ["mu1", "amplitude", "period", "stable"]
    assert header[4:] == ["mult1_re", "mult1_im", "mult2_re", "mult2_im",
                          "mult3_re", "mult3_im", "mult4_re", "mult4_im"]
    assert len(rows) > 5
    eh, _ = report.read_csv(tmp_path / "branch_events.csv")
    assert eh == ["kind", "mu1", "amplitude"]
