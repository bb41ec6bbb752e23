"""End-to-end tests of the command-line interface."""
import numpy as np
import pytest

from hemogrp.cli import main


def _run(argv, monkeypatch, tmp_path, subdir="out"):
    out = tmp_path / subdir
    monkeypatch.setenv("HEMOGRP_OUT", str(out))
    code = main(argv)
    return code, out


class TestRun:
    def test_snapshot_and_error_report(self, monkeypatch, tmp_path, capsys):
        code, out = _run(["run", "--case", "example2", "--cells", "50"],
                         monkeypatch, tmp_path)
        assert code == 0
        snap = out / "example2_grp_50.csv"
        report = out / "example2_grp_50_error.csv"
        assert snap.exists() and report.exists()
        assert "L1 error" in capsys.readouterr().out
        header, row = report.read_text().strip().splitlines()
        assert header == "case,scheme,cells,kind,value,runtime"
        assert row.startswith("example2,grp,50,L1,")

    def test_double_run_is_byte_identical(self, monkeypatch, tmp_path):
        argv = ["run", "--case", "example2", "--cells", "50"]
        _, out1 = _run(argv, monkeypatch, tmp_path, "a")
        _, out2 = _run(argv, monkeypatch, tmp_path, "b")
        f1 = (out1 / "example2_grp_50.csv").read_bytes()
        f2 = (out2 / "example2_grp_50.csv").read_bytes()
        assert f1 == f2

    def test_2d_case_writes_field_snapshot(self, monkeypatch, tmp_path):
        code, out = _run(["run", "--case", "example6", "--cells", "8",
                          "--t-end", "0.01"], monkeypatch, tmp_path)
        assert code == 0
        snap = out / "example6_grp_8x8.csv"
        lines = snap.read_text().strip().splitlines()
        assert lines[0].startswith("# nx=8 ny=8 t=0.01")
        assert lines[1] == "x,y,A,u,v"

    def test_unknown_case_exits_with_message(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv("HEMOGRP_OUT", str(tmp_path / "out"))
        with pytest.raises(SystemExit) as exc:
            main(["run", "--case", "nope"])
        assert "unknown case" in str(exc.value)

    def test_out_flag_overrides_env(self, monkeypatch, tmp_path):
        monkeypatch.setenv("HEMOGRP_OUT", str(tmp_path / "ignored"))
        explicit = tmp_path / "explicit"
        code = main(["run", "--case", "example2", "--cells", "50",
                     "--out", str(explicit)])
        assert code == 0
        assert (explicit / "example2_grp_50.csv").exists()
        assert not (tmp_path / "ignored").exists()


class TestConfig:
    def test_config_file_supplies_defaults(self, monkeypatch, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# settings\ncells = 50\ncfl = 0.4\n")
        code, out = _run(["run", "--case", "example2", "--config", str(cfg)],
                         monkeypatch, tmp_path)
        assert code == 0
        assert (out / "example2_grp_50.csv").exists()

    def test_explicit_flag_beats_config(self, monkeypatch, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cells = 50\n")
        code, out = _run(["run", "--case", "example2", "--config", str(cfg),
                          "--cells", "60"], monkeypatch, tmp_path)
        assert code == 0
        assert (out / "example2_grp_60.csv").exists()

    def test_unknown_config_key_rejected(self, monkeypatch, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cell_count = 50\n")
        monkeypatch.setenv("HEMOGRP_OUT", str(tmp_path / "out"))
        with pytest.raises(SystemExit) as exc:
            main(["run", "--case", "example2", "--config", str(cfg)])
        assert "unknown config key" in str(exc.value)

    def test_malformed_config_line_reports_location(self, monkeypatch, tmp_path,
                                                    capsys):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("cells 50\n")
        code, _ = _run(["run", "--case", "example2", "--config", str(cfg)],
                       monkeypatch, tmp_path)
        assert code == 1
        assert "key=value" in capsys.readouterr().err


class TestOtherCommands:
    def test_convergence_writes_table(self, monkeypatch, tmp_path, capsys):
        code, out = _run(["convergence", "--case", "example1", "--mode",
                          "mesh-doubling", "--cells", "20,40"],
                         monkeypatch, tmp_path)
        assert code == 0
        table = out / "example1_grp_mesh-doubling.csv"
        lines = table.read_text().strip().splitlines()
        assert lines[0] == "level,param,error,order"
        assert len(lines) == 3
        assert "order=" in capsys.readouterr().out

    def test_riemann_prints_star_state(self, monkeypatch, tmp_path, capsys):
        code, _ = _run(["riemann", "--al", "3.5", "--ul", "3.5", "--ar", "2.5",
                        "--ur", "5.0", "--k", "10.0"], monkeypatch, tmp_path)
        assert code == 0
        text = capsys.readouterr().out
        assert "u* = 4.73160238927" in text
        assert "rarefaction" in text

    def test_grp_probe_prints_rates(self, monkeypatch, tmp_path, capsys):
        code, _ = _run(["grp-probe", "--al", "1.4", "--ul", "0.8", "--ar",
                        "1.2", "--ur", "-0.5", "--dal", "0.2", "--k", "6.0"],
                       monkeypatch, tmp_path)
        assert code == 0
        text = capsys.readouterr().out
        assert "case    = nonsonic" in text
        assert "dA/dt" in text

    def test_list_cases(self, monkeypatch, tmp_path, capsys):
        code, _ = _run(["list-cases"], monkeypatch, tmp_path)
        assert code == 0
        text = capsys.readouterr().out
        for i in range(1, 9):
            assert f"example{i}:" in text

    def test_runtime_error_becomes_exit_code(self, monkeypatch, tmp_path,
                                             capsys):
        # vacuum-forming data makes the exact solver raise; main maps it to 1
        code, _ = _run(["riemann", "--al", "0.5", "--ul", "-8", "--ar", "0.5",
                        "--ur", "8", "--k", "2.0"], monkeypatch, tmp_path)
        assert code == 1
        assert "error:" in capsys.readouterr().err
