"""Command-line interface: formats, exit codes, determinism."""

import json
import math
import subprocess
import sys

import numpy as np
import pytest

from spingate.cli import _fmt, main

COMPLETE_SWITCH = math.pi / math.sqrt(8.0)


def _lines(path):
    return path.read_text().splitlines()


def test_fmt_uses_12_significant_digits():
    assert _fmt(1.0 / 3.0) == "0.333333333333"
    assert _fmt(2.0) == "2"
    assert _fmt(0.05) == "0.05"
    assert _fmt(math.pi) == "3.14159265359"
    assert _fmt(float("nan")) == "nan"


def test_evolve_csv(tmp_path):
    out = tmp_path / "evolve.csv"
    code = main([
        "evolve", "--u-over-v", "0", "--h-over-v", "2",
        "--t-max", "3", "--dt-out", "0.01", "--out", str(out),
    ])
    assert code == 0
    lines = _lines(out)
    assert lines[0] == "t,p1,p2,p3,p4,p5,p6,s_za,s_zb,energy"
    assert len(lines) == 302
    table = np.array([[float(cell) for cell in line.split(",")] for line in lines[1:]])
    times, probs = table[:, 0], table[:, 1:7]
    # 12-significant-digit cells quantize each value by up to 5e-13, so the
    # re-parsed invariants hold to 4e-12; the in-memory trajectories hold 1e-12
    assert np.max(np.abs(np.sum(probs, axis=1) - 1.0)) <= 4e-12
    assert np.max(np.abs(table[:, 7] + table[:, 8])) <= 4e-12
    assert np.max(np.abs(table[:, 9] - table[0, 9])) <= 4e-12
    best = int(np.argmax(probs[:, 0]))
    assert probs[best, 0] == pytest.approx(1.0, abs=1e-4)
    assert times[best] == pytest.approx(COMPLETE_SWITCH, abs=0.006)


def test_evolve_zero_field_is_static(tmp_path):
    out = tmp_path / "flat.csv"
    assert main(["evolve", "--t-max", "2", "--dt-out", "0.1", "--out", str(out)]) == 0
    table = np.array([
        [float(cell) for cell in line.split(",")] for line in _lines(out)[1:]
    ])
    assert np.max(np.abs(table[:, 7])) <= 1e-15
    assert np.max(np.abs(table[:, 8])) <= 1e-15
    assert np.max(np.abs(table[:, 1] - table[0, 1])) <= 1e-14


def test_evolve_json_matches_csv(tmp_path):
    args = ["evolve", "--h-over-v", "1", "--t-max", "1", "--dt-out", "0.5"]
    csv_path = tmp_path / "run.csv"
    json_path = tmp_path / "run.json"
    assert main(args + ["--out", str(csv_path)]) == 0
    assert main(args + ["--format", "json", "--out", str(json_path)]) == 0
    rows = json.loads(json_path.read_text())
    lines = _lines(csv_path)
    assert len(rows) == len(lines) - 1
    keys = lines[0].split(",")
    for row, line in zip(rows, lines[1:]):
        cells = [float(cell) for cell in line.split(",")]
        assert list(row.keys()) == keys
        for key, cell in zip(keys, cells):
            assert row[key] == pytest.approx(cell, rel=1e-11, abs=1e-12)


def test_fig1_small_grid(tmp_path):
    out = tmp_path / "fig1.csv"
    code = main([
        "fig1", "--u-over-v", "0", "1", "--h-min", "1", "--h-max", "2.5",
        "--h-step", "0.5", "--out", str(out),
    ])
    assert code == 0
    lines = _lines(out)
    assert lines[0] == "u_over_v,h_over_v,t0,s_za_at_t0,p_err,status"
    assert len(lines) == 9
    rows = [line.split(",") for line in lines[1:]]
    assert all(row[5] == "ok" for row in rows)
    assert [float(row[0]) for row in rows] == [0.0] * 4 + [1.0] * 4
    complete = rows[2]
    assert float(complete[1]) == 2.0
    assert float(complete[3]) == pytest.approx(0.5, abs=1e-6)
    assert float(complete[2]) == pytest.approx(COMPLETE_SWITCH, abs=1e-6)


def test_fig1_rejects_bad_grid():
    assert main(["fig1", "--h-min", "0", "--h-max", "1"]) == 2
    assert main(["fig1", "--h-step", "-0.1"]) == 2
    assert main(["fig1", "--h-min", "2", "--h-max", "1"]) == 2
    assert main(["fig1", "--u-over-v", "-1"]) == 2


def test_sweep_partial_failure_exit_code(tmp_path):
    out = tmp_path / "partial.csv"
    code = main([
        "sweep", "--h-min", "0.5", "--h-max", "2", "--h-step", "1.5",
        "--t-max", "1.3", "--out", str(out),
    ])
    assert code == 1
    rows = [line.split(",") for line in _lines(out)[1:]]
    assert [row[5] for row in rows] == ["horizon-exceeded", "ok"]
    assert rows[0][2] == "nan"


def test_sweep_json_failures_become_null(tmp_path):
    out = tmp_path / "partial.json"
    code = main([
        "sweep", "--h-min", "0.5", "--h-max", "2", "--h-step", "1.5",
        "--t-max", "1.3", "--format", "json", "--out", str(out),
    ])
    assert code == 1
    rows = json.loads(out.read_text())
    assert rows[0]["status"] == "horizon-exceeded"
    assert rows[0]["t0"] is None and rows[0]["s_za_at_t0"] is None
    assert rows[1]["status"] == "ok"
    assert rows[1]["t0"] == pytest.approx(COMPLETE_SWITCH, abs=1e-6)


def test_optimize_json(tmp_path):
    out = tmp_path / "opt.json"
    code = main(["optimize", "--u-over-v", "0", "--v-mev", "10", "--g", "2",
                 "--out", str(out)])
    assert code == 0
    payload = json.loads(out.read_text())
    assert payload["status"] == "ok"
    assert payload["h_opt_over_v"] == pytest.approx(2.0, abs=1e-3)
    assert payload["s_za_at_t0"] == pytest.approx(0.5, abs=1e-6)
    assert payload["t0_seconds"] == pytest.approx(7.311e-14, rel=1e-3)
    assert payload["h_a_tesla"] == pytest.approx(172.76, abs=0.05)


def test_optimize_without_units_omits_conversions(capsys):
    assert main(["optimize", "--u-over-v", "0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "t0_seconds" not in payload and "h_a_tesla" not in payload


def test_optimize_usage_errors():
    assert main(["optimize", "--h-min", "1"]) == 2
    assert main(["optimize", "--h-min", "2", "--h-max", "1"]) == 2
    assert main(["optimize", "--h-min", "3", "--h-max", "6"]) == 2
    assert main(["optimize", "--v-mev", "-1"]) == 2


def test_convert_exact_values(capsys):
    code = main(["convert", "--t0", "1.5", "--h-over-v", "2",
                 "--v-mev", "10", "--g", "2"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["t0_seconds"] == pytest.approx(9.8731793535e-14, rel=1e-12)
    assert payload["h_a_tesla"] == pytest.approx(172.7598547, rel=1e-9)


def test_convert_usage_errors():
    assert main(["convert", "--t0", "-1", "--h-over-v", "1", "--v-mev", "1"]) == 2
    assert main(["convert", "--t0", "1", "--h-over-v", "1", "--v-mev", "0"]) == 2
    assert main(["convert", "--t0", "1", "--h-over-v", "1", "--v-mev", "1",
                 "--g", "0"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["convert", "--t0", "1", "--h-over-v", "1"])
    assert exc.value.code == 2


def test_argparse_usage_exits_with_2():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["evolve", "--format", "xml"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_repeated_runs_are_byte_identical(tmp_path):
    args = ["fig1", "--u-over-v", "0", "2", "--h-min", "0.4", "--h-max", "3",
            "--h-step", "0.2"]
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    assert main(args + ["--out", str(first)]) == 0
    assert main(args + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    evolve_args = ["evolve", "--h-over-v", "1.7", "--t-max", "4", "--dt-out", "0.05"]
    third = tmp_path / "c.csv"
    fourth = tmp_path / "d.csv"
    assert main(evolve_args + ["--out", str(third)]) == 0
    assert main(evolve_args + ["--out", str(fourth)]) == 0
    assert third.read_bytes() == fourth.read_bytes()


def test_module_invocation_runs():
    result = subprocess.run(
        [sys.executable, "-m", "spingate", "convert", "--t0", "1",
         "--h-over-v", "1", "--v-mev", "1"],
        capture_output=True, text=True, timeout=120,
    )
    assert result.returncode == 0
    payload = json.loads(result.stdout)
    assert payload["t0_seconds"] == pytest.approx(6.582119569e-13, rel=1e-12)


def test_unwritable_output_path(tmp_path):
    target = tmp_path / "missing-dir" / "out.csv"
    code = main(["convert", "--t0", "1", "--h-over-v", "1", "--v-mev", "1",
                 "--out", str(target)])
    assert code == 2
