"""Reading the simulator's BER CSV files.

The column contract (header row required, comma separated, LF endings):

    eb_n0_db,bits_sent,bit_errors,ber,frames_sent,frame_errors,fer,ci95_halfwidth

Only the eb_n0_db and ber columns are plotted, but each row keeps the
original text of those two fields so the sidecar dump can reproduce the
file content losslessly (no float round-trip).
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

CSV_HEADER = "eb_n0_db,bits_sent,bit_errors,ber,frames_sent,frame_errors,fer,ci95_halfwidth"
_N_COLUMNS = len(CSV_HEADER.split(","))


class ParseError(ValueError):
    """Malformed input file; the message names the file and line."""


@dataclass(frozen=True)
class Series:
    label: str
    x: tuple[float, ...]  # Eb/N0 in dB
    y: tuple[float, ...]  # BER
    raw_pairs: tuple[tuple[str, str], ...]  # original (eb_n0_db, ber) text


def read_series(path: str | Path, label: str) -> Series:
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as e:
        raise ParseError(f"{path}: {e.strerror or e}") from None
    if not lines or lines[0] != CSV_HEADER:
        raise ParseError(f"{path}:1: expected header {CSV_HEADER!r}")
    xs, ys, raw = [], [], []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != _N_COLUMNS:
            raise ParseError(f"{path}:{lineno}: expected {_N_COLUMNS} columns, "
                             f"got {len(fields)}")
        try:
            xs.append(float(fields[0]))
            ys.append(float(fields[3]))
        except ValueError:
            raise ParseError(f"{path}:{lineno}: non-numeric value in "
                             f"eb_n0_db/ber columns") from None
        raw.append((fields[0], fields[3]))
    if not xs:
        raise ParseError(f"{path}: no data rows")
    return Series(label, tuple(xs), tuple(ys), tuple(raw))


def sidecar_text(series_list: list[Series]) -> str:
    """Lossless dump of the plotted (x, y) pairs, one block per series."""
    blocks = []
    for s in series_list:
        lines = [f"# series: {s.label}"]
        lines += [f"{x},{y}" for x, y in s.raw_pairs]
        blocks.append("\n".join(lines))
    return "\n".join(blocks) + "\n"
