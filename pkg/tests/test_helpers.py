import math

import numpy as np
import pytest

from dipoledyn.utils.helpers import format_number, normalize_key, sanitize
from dipoledyn.utils.tables import EXCEL_ENGINE, record_frame, render_csv, to_frame, write_table


@pytest.mark.parametrize(
    "value, expected",
    [
        (375.00000000000006, "375"),
        (0.0, "0"),
        (-0.0, "0"),
        (3, "3"),
        (True, "1"),
        (math.nan, "nan"),
        (-math.inf, "-inf"),
        (np.float64(1.0 / 3.0), "0.333333333333"),
        ("  rydberg\x00", "rydberg"),
    ],
)
def test_format_number(value, expected):
    assert format_number(value) == expected


def test_normalize_key():
    assert normalize_key("Detuning-Ratio") == "detuning_ratio"
    assert normalize_key(" a over imc ") == "a_over_imc"
    assert normalize_key(None) == ""


def test_sanitize():
    assert sanitize(" x\x00 ") == "x"
    assert sanitize(5) == 5


def test_render_csv_header_rows_and_summary():
    df = to_frame([(0.0, 1.0 / 3.0), (0.02, 2.0)], ["t", "P_s"])
    text = render_csv(df, {"F_max": 0.96, "target": "s"})
    assert text.splitlines() == [
        "#t,P_s",
        "0,0.333333333333",
        "0.02,2",
        "# F_max=0.96",
        "# target=s",
    ]
    assert "\r" not in text


def test_render_csv_of_empty_table_keeps_header():
    assert render_csv(to_frame([], ["a", "b"])) == "#a,b\n"


def test_record_frame_mixes_labels_and_numbers():
    text = render_csv(record_frame({"scenario": "rydberg", "k0r": 0.2, "points": 3}))
    assert text.splitlines() == ["#quantity,value", "scenario,rydberg", "k0r,0.2", "points,3"]


def test_write_table_to_csv_file(tmp_path):
    out = tmp_path / "run.csv"
    df = to_frame([(1.0, 2.0)], ["a", "b"])
    assert write_table(df, out, {"n": 1}) == out
    assert out.read_bytes() == b"#a,b\n1,2\n# n=1\n"


def test_write_table_to_stdout(capsys):
    write_table(to_frame([(1.5,)], ["x"]))
    assert capsys.readouterr().out == "#x\n1.5\n"


@pytest.mark.skipif(EXCEL_ENGINE is None, reason="no Excel writer installed")
def test_write_table_to_excel(tmp_path):
    out = tmp_path / "run.xlsx"
    write_table(to_frame([(1.0, 2.0)], ["a", "b"]), out, {"n": 1})
    # xlsx files are zip archives
    assert out.read_bytes()[:2] == b"PK"
