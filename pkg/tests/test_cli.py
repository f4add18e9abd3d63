import json
import math

import pytest

from dipoledyn.cli import main


def _rows(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


def _summary(text):
    pairs = (line[2:].split("=", 1) for line in text.splitlines() if line.startswith("# "))
    return dict(pairs)


def test_coupling(capsys):
    assert main(["coupling", "--k0r", "0.2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("#quantity,value\n")
    assert "leading_shift,375" in _rows(out)


def test_coupling_target_shift(capsys):
    assert main(["coupling", "--target-shift", "375"]) == 0
    rows = dict(line.split(",", 1) for line in _rows(capsys.readouterr().out))
    assert float(rows["k0r_for_shift_small_r"]) == pytest.approx(0.2, abs=0.01)


def test_feasibility(capsys):
    assert main(["feasibility", "--mass", "100", "--lambda0", "10e-6", "--k0r", "0.2"]) == 0
    rows = dict(line.split(",", 1) for line in _rows(capsys.readouterr().out))
    assert float(rows["trap_frequency_mhz"]) == pytest.approx(46.8, rel=0.02)


def test_feasibility_preset(capsys):
    assert main(["feasibility", "--scenario", "yb-ion"]) == 0
    rows = dict(line.split(",", 1) for line in _rows(capsys.readouterr().out))
    assert float(rows["trap_frequency_mhz"]) == pytest.approx(127.0, rel=0.02)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["teleport"],
        ["prep-s", "--rabi", "fast"],
        ["sweep", "--kind", "everything"],
        ["coupling", "--no-such-flag"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_invalid_physics_exits_1(capsys):
    assert main(["prep-s", "--rabi", "-1"]) == 1
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err.startswith("dipoledyn: error:")


def test_bad_config_exits_1(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"laser": {"colour": "red"}}), encoding="utf-8")
    assert main(["coupling", "--config", str(path)]) == 1
    assert "colour" in capsys.readouterr().err


def test_config_file_matches_flags(tmp_path, capsys):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"sweep": {"kind": "shift", "points": 5}}), encoding="utf-8")
    assert main(["sweep", "--config", str(path)]) == 0
    from_file = capsys.readouterr().out
    assert main(["sweep", "--kind", "shift", "--points", "5"]) == 0
    from_flags = capsys.readouterr().out
    assert from_file == from_flags
    assert len(_rows(from_flags)) == 5


def test_out_file(tmp_path, capsys):
    out = tmp_path / "shift.csv"
    assert main(["sweep", "--kind", "shift", "--points", "4", "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    text = out.read_text(encoding="utf-8")
    assert text.startswith("#k0r,")
    assert "\r" not in text


def test_ideal_truth_table(capsys):
    assert main(["truth-table", "--model", "ideal"]) == 0
    summary = _summary(capsys.readouterr().out)
    assert float(summary["fidelity_vs_ideal"]) == pytest.approx(1.0, abs=1e-6)
    assert float(summary["duration"]) == pytest.approx(2.0 * math.pi)


def test_prep_s_summary(capsys):
    assert main(["prep-s", "--rabi", "0.25", "--tmax", "12"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("#t,P_g,P_s,P_a,P_e,norm\n")
    assert float(_summary(out)["F_max"]) == pytest.approx(0.96, abs=0.01)


def test_repeated_runs_follow_captured_stderr(capsys):
    for _ in range(2):
        assert main(["coupling", "--log-level", "info"]) == 0
        captured = capsys.readouterr()
        assert "running coupling" in captured.err


@pytest.mark.parametrize("argv", [["--theta", "0"], ["--theta", "3.14159"], ["--k0r", "5"]])
def test_coupling_accepts_full_parameter_range(argv, capsys):
    assert main(["coupling", *argv]) == 0
    assert "re_c" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [["--theta", "4"], ["--k0r", "-1"]])
def test_coupling_rejects_out_of_range(argv, capsys):
    assert main(["coupling", *argv]) == 1
    assert capsys.readouterr().err.startswith("dipoledyn: error:")


@pytest.mark.parametrize(
    "argv",
    [
        ["prep-s", "--rabi", "0.25", "--tmax", "12"],
        ["cnot", "--tmax", "8"],
        ["sweep", "--kind", "state-prep", "--points", "3"],
    ],
)
def test_dynamics_output_is_byte_identical(argv, capsys):
    outputs = []
    for _ in range(2):
        assert main(argv) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    assert outputs[0].startswith("#t,")


def test_cnot_defaults_to_the_prescribed_drive(capsys):
    assert main(["cnot", "--tmax", "8"]) == 0
    summary = _summary(capsys.readouterr().out)
    assert summary["model"] == "prescribed"
    assert float(summary["P_swap_at_T"]) >= 0.95
    assert main(["truth-table"]) == 0
    summary = _summary(capsys.readouterr().out)
    assert float(summary["fidelity_vs_ideal"]) >= 0.95
