"""CSV parsing tests for the plot tool."""
import pytest

from wimax_plots.curves import CSV_HEADER, ParseError, read_series, sidecar_text

GOOD_ROWS = [
    "0,100000,1000,1.0000000000e-02,500,400,8.0000000000e-01,6.1676987042e-04",
    "10,100000,10,1.0000000000e-04,500,9,1.8000000000e-02,6.1979283258e-05",
]


def _write(tmp_path, name, lines):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n")
    return path


def test_read_series_parses_plot_columns(tmp_path):
    path = _write(tmp_path, "a.csv", [CSV_HEADER] + GOOD_ROWS)
    s = read_series(path, "siso")
    assert s.label == "siso"
    assert s.x == (0.0, 10.0)
    assert s.y == (1e-2, 1e-4)
    assert s.raw_pairs == (("0", "1.0000000000e-02"), ("10", "1.0000000000e-04"))


def test_sidecar_is_lossless(tmp_path):
    path = _write(tmp_path, "a.csv", [CSV_HEADER] + GOOD_ROWS)
    s = read_series(path, "siso")
    text = sidecar_text([s])
    # each plotted pair appears exactly as in the CSV, no reformatting
    for row in GOOD_ROWS:
        fields = row.split(",")
        assert f"{fields[0]},{fields[3]}" in text.splitlines()


def test_missing_header_names_file_and_line(tmp_path):
    path = _write(tmp_path, "bad.csv", ["snr,ber"] + GOOD_ROWS)
    with pytest.raises(ParseError, match=r"bad\.csv:1"):
        read_series(path, "x")


def test_short_row_names_line(tmp_path):
    path = _write(tmp_path, "bad.csv", [CSV_HEADER, GOOD_ROWS[0], "1,2,3"])
    with pytest.raises(ParseError, match=r"bad\.csv:3"):
        read_series(path, "x")


def test_non_numeric_value_names_line(tmp_path):
    row = GOOD_ROWS[0].replace("1.0000000000e-02", "oops")
    path = _write(tmp_path, "bad.csv", [CSV_HEADER, row])
    with pytest.raises(ParseError, match=r"bad\.csv:2"):
        read_series(path, "x")


def test_no_data_rows_rejected(tmp_path):
    path = _write(tmp_path, "empty.csv", [CSV_HEADER])
    with pytest.raises(ParseError, match="no data rows"):
        read_series(path, "x")


def test_missing_file_reported(tmp_path):
    with pytest.raises(ParseError):
        read_series(tmp_path / "absent.csv", "x")
