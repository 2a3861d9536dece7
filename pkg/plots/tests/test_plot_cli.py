"""End-to-end CLI tests for plot and table rendering."""
import pytest

from wimax_plots.cli import GAINS_HEADER, main
from wimax_plots.curves import CSV_HEADER


def _curve_csv(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text(CSV_HEADER + "\n" + "\n".join(rows) + "\n")
    return path


ROWS_A = [
    "0,100000,1000,1.0000000000e-02,500,400,8.0000000000e-01,6.1676987042e-04",
    "5,100000,180,1.8000000000e-03,500,90,1.8000000000e-01,2.6290987672e-04",
    "10,100000,10,1.0000000000e-04,500,9,1.8000000000e-02,6.1979283258e-05",
]
ROWS_B = [
    "0,100000,2000,2.0000000000e-02,500,450,9.0000000000e-01,8.6772000000e-04",
    "10,100000,50,5.0000000000e-04,500,40,8.0000000000e-02,1.3858000000e-04",
]


def test_plot_writes_image_and_lossless_sidecar(tmp_path):
    a = _curve_csv(tmp_path, "a.csv", ROWS_A)
    b = _curve_csv(tmp_path, "b.csv", ROWS_B)
    before = (a.read_bytes(), b.read_bytes())
    out = tmp_path / "fig.png"
    rc = main(["plot", "--csv", f"{a}:siso", "--csv", f"{b}:2x2",
               "--out", str(out)])
    assert rc == 0
    assert out.stat().st_size > 0
    sidecar = tmp_path / "fig.png.data.txt"
    lines = sidecar.read_text().splitlines()
    assert lines[0] == "# series: siso"
    expected = [f"{r.split(',')[0]},{r.split(',')[3]}" for r in ROWS_A]
    assert lines[1:1 + len(ROWS_A)] == expected
    assert "# series: 2x2" in lines
    # inputs are untouched
    assert (a.read_bytes(), b.read_bytes()) == before


def test_plot_svg_output(tmp_path):
    a = _curve_csv(tmp_path, "a.csv", ROWS_A)
    out = tmp_path / "fig.svg"
    assert main(["plot", "--csv", f"{a}:curve", "--out", str(out)]) == 0
    assert out.read_text().lstrip().startswith("<?xml")


@pytest.mark.parametrize("overlay", ["bpsk-awgn", "bpsk-rayleigh"])
def test_plot_with_overlay(tmp_path, overlay):
    a = _curve_csv(tmp_path, "a.csv", ROWS_A)
    out = tmp_path / "fig.png"
    assert main(["plot", "--csv", f"{a}:c", "--out", str(out),
                 "--overlay", overlay]) == 0
    assert out.stat().st_size > 0


def test_plot_without_series_is_usage_error(tmp_path):
    assert main(["plot", "--out", str(tmp_path / "fig.png")]) == 2
    assert not (tmp_path / "fig.png").exists()


def test_plot_malformed_csv_exits_nonzero(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("not,a,curve\n")
    assert main(["plot", "--csv", f"{bad}:x",
                 "--out", str(tmp_path / "fig.png")]) == 2


def test_plot_bad_csv_argument(tmp_path):
    assert main(["plot", "--csv", "nolabel",
                 "--out", str(tmp_path / "fig.png")]) == 2


def _gains_csv(tmp_path, rows):
    path = tmp_path / "gains.csv"
    path.write_text(GAINS_HEADER + "\n" + "\n".join(rows) + "\n")
    return path


def test_table_single_row(tmp_path):
    gains = _gains_csv(tmp_path, ["qpsk-1/2,2.4,2,2"])
    out = tmp_path / "table.txt"
    assert main(["table", "--gains", str(gains), "--out", str(out)]) == 0
    body = out.read_text().splitlines()
    assert body[2].startswith("qpsk-1/2")
    assert "+2.40" in body[2] and "+2.00" in body[2]


def test_table_all_profiles_in_figure_order(tmp_path):
    order = ["bpsk-1/2", "qpsk-1/2", "qpsk-3/4", "16qam-1/2",
             "16qam-3/4", "64qam-2/3", "64qam-3/4"]
    rows = [f"{p},{i}.5,2,2" for i, p in enumerate(reversed(order))]
    gains = _gains_csv(tmp_path, rows)
    out = tmp_path / "table.txt"
    assert main(["table", "--gains", str(gains), "--out", str(out)]) == 0
    body = out.read_text().splitlines()
    assert len(body) == 2 + 7
    assert [line.split()[0] for line in body[2:]] == order


def test_table_missing_values_render_na(tmp_path):
    gains = _gains_csv(tmp_path, ["bpsk-1/2,nan,2,", "qpsk-1/2,1.5,,2"])
    out = tmp_path / "table.txt"
    assert main(["table", "--gains", str(gains), "--out", str(out)]) == 0
    body = out.read_text().splitlines()
    assert body[2].split()[1] == "n/a"  # unmeasurable gap
    assert body[2].split()[3] == "n/a"  # absent claimed text value
    assert body[3].split()[2] == "n/a"  # absent claimed table value


def test_table_malformed_header_exits_nonzero(tmp_path):
    bad = tmp_path / "gains.csv"
    bad.write_text("wrong,header\n")
    assert main(["table", "--gains", str(bad),
                 "--out", str(tmp_path / "t.txt")]) == 2
