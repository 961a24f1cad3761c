import json

import pytest

from symbeta.cli import main
from symbeta.reporting import (ConfigError, RunConfig, cmd_check, cmd_expand,
                               cmd_spectrum, cmd_words, cmd_zerotemp,
                               render_report)


def test_config_round_trip():
    cfg = RunConfig(m=3, beta="3.5", depth=4, potential="digit_table:0.3,0.0,0.1,0.05",
                    t_grid=(1.0, 2.0, 4.0), tol=1e-13, fmt="jsonl", a="0.75")
    assert RunConfig.from_text(cfg.to_text()) == cfg


def test_config_rejects_bad_values():
    with pytest.raises(ConfigError):
        RunConfig(m=0)
    with pytest.raises(ConfigError):
        RunConfig(fmt="xml")
    with pytest.raises(ConfigError):
        RunConfig(t_grid=(2.0, 1.0))
    with pytest.raises(ConfigError):
        RunConfig(potential="mystery:1")
    with pytest.raises(ConfigError):
        RunConfig.from_text("m = 3\nnot_a_key = 1\n")


def test_cmd_expand_golden():
    cfg = RunConfig(m=1, beta="golden", a="1", depth=8)
    rep = cmd_expand(cfg)
    assert rep.summary["greedy"] == "11000000"
    assert rep.summary["lazy"] == "01111111"
    assert rep.summary["quasi_greedy"] == "10101010"
    assert rep.summary["unique"] is False


def test_cmd_expand_requires_a():
    with pytest.raises(ConfigError):
        cmd_expand(RunConfig(m=1, beta="golden"))


def test_cmd_expand_zero_and_non_integer_base():
    rep0 = cmd_expand(RunConfig(m=1, beta="golden", a="0", depth=6))
    assert rep0.summary["greedy"] == "000000"
    assert rep0.summary["unique"] is True
    rep = cmd_expand(RunConfig(m=3, beta="3.5", a="1", depth=5))
    assert rep.summary["greedy"] == "31220"


def test_cmd_check_surfaces_warnings():
    rep = cmd_check(RunConfig(m=4, beta="4", depth=4))
    assert rep.summary["transitivity"] == "transitive"
    assert rep.summary["digit_interval_integers"] == [2]
    assert any("interval" in w for w in rep.warnings)
    rep35 = cmd_check(RunConfig(m=3, beta="3.5", depth=4))
    assert rep35.summary["transitivity"] == "unknown"
    assert any("transitivity" in w for w in rep35.warnings)


def test_cmd_words_counts():
    rep = cmd_words(RunConfig(m=2, beta="beta_T", depth=2))
    assert rep.summary["count"] == 7
    assert rep.summary["forbidden_words"] == ["00", "22"]
    assert len(rep.rows) == 7


def test_cmd_spectrum_full_shift():
    cfg = RunConfig(m=3, beta="4", depth=2, potential="zero")
    rep = cmd_spectrum(cfg)
    assert rep.summary["lambda"] == pytest.approx(4.0, abs=1e-10)
    assert rep.summary["lk_vs_power"] < 1e-8
    assert rep.summary["row_sum_residual"] < 1e-10
    assert rep.exit_code == 0


def test_cmd_spectrum_propagates_lower_warnings():
    cfg = RunConfig(m=3, beta="3.5", depth=4, potential="zero")
    rep = cmd_spectrum(cfg)
    assert any("transitivity unknown" in w for w in rep.warnings)


def test_cmd_spectrum_full_dump():
    cfg = RunConfig(m=3, beta="4", depth=2, potential="zero")
    assert len(cmd_spectrum(cfg).rows) == 10
    assert len(cmd_spectrum(cfg, full=True).rows) == 16


def test_module_entry_point():
    import subprocess, sys
    out = subprocess.run(
        [sys.executable, "-m", "symbeta", "expand", "--m", "1", "--beta",
         "golden", "--a", "1", "--depth", "6"],
        capture_output=True, text=True)
    assert out.returncode == 0
    assert "110000" in out.stdout


def test_render_determinism_and_jsonl_validity():
    cfg = RunConfig(m=3, beta="4", depth=2, potential="digit_table:0.2,0,0.1,0.0",
                    fmt="jsonl")
    rep1 = cmd_spectrum(cfg)
    rep2 = cmd_spectrum(cfg)
    out1 = render_report(rep1, "jsonl")
    out2 = render_report(rep2, "jsonl")
    assert out1 == out2
    records = [json.loads(line) for line in out1.strip().splitlines()]
    kinds = {r["record"] for r in records}
    assert "config" in kinds and "summary" in kinds
    for fmt in ("table", "csv"):
        assert render_report(rep1, fmt) == render_report(rep2, fmt)


def test_cmd_zerotemp_csv():
    cfg = RunConfig(m=3, beta="4", depth=2, potential="digit_table:0.3,0,0.1,0.05",
                    t_grid=(1.0, 4.0, 16.0, 64.0), fmt="csv")
    rep = cmd_zerotemp(cfg)
    out = render_report(rep, "csv")
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0].startswith("t,pressure,entropy,average")
    assert len(lines) == 5


# ---------------------------------------------------------------------------
# CLI entry point and exit codes


def test_cli_success(capsys):
    code = main(["expand", "--m", "1", "--beta", "golden", "--a", "1", "--depth", "6"])
    out = capsys.readouterr().out
    assert code == 0
    assert "110000" in out


def test_cli_invalid_config(capsys):
    assert main(["check", "--m", "3", "--beta", "9.5"]) == 2
    assert main(["zerotemp", "--m", "3", "--beta", "4", "--t-grid", "4,2"]) == 2
    assert "config error" in capsys.readouterr().err


def test_cli_regime_refusal(capsys):
    code = main(["spectrum", "--m", "2", "--beta", "beta_T", "--depth", "3"])
    assert code == 3
    assert "refused" in capsys.readouterr().err


def test_cli_kneading_too_shallow(capsys):
    # canonical sampling of a geometric potential reads more digits than
    # the truncated kneading sequence can certify
    code = main(["spectrum", "--m", "3", "--beta", "3.5", "--depth", "4",
                 "--kneading-depth", "8",
                 "--potential", "geometric:c=0.3,theta=0.25,kmax=32"])
    assert code == 2
    assert "kneading" in capsys.readouterr().err


def test_cli_config_file_and_override(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text(RunConfig(m=2, beta="beta_T", depth=2).to_text())
    code = main(["words", "--config", str(cfgfile), "--format", "jsonl"])
    out = capsys.readouterr().out
    assert code == 0
    first = json.loads(out.splitlines()[0])
    assert first["m"] == 2 and first["fmt"] == "jsonl"


def test_cli_env_tol_override(capsys, monkeypatch):
    monkeypatch.setenv("SYMBETA_TOL", "1e-10")
    code = main(["check", "--m", "3", "--beta", "4", "--depth", "2",
                 "--format", "jsonl"])
    out = capsys.readouterr().out
    assert code == 0
    assert json.loads(out.splitlines()[0])["tol"] == 1e-10
    # explicit flag wins over the environment
    main(["check", "--m", "3", "--beta", "4", "--depth", "2", "--tol", "1e-9",
          "--format", "jsonl"])
    out = capsys.readouterr().out
    assert json.loads(out.splitlines()[0])["tol"] == 1e-9


def test_cli_byte_identical_runs(capsys):
    args = ["thermo", "--m", "3", "--beta", "4", "--depth", "2",
            "--potential", "digit_table:0.2,0,0.1,0.05", "--format", "jsonl"]
    main(args)
    out1 = capsys.readouterr().out
    main(args)
    out2 = capsys.readouterr().out
    assert out1 == out2
