"""Command-line front end: `plot` and `table`.

Exit codes: 0 success, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .curves import ParseError, read_series, sidecar_text  # noqa: E402
from .overlays import OVERLAYS  # noqa: E402

EXIT_USAGE = 2

GAINS_HEADER = "profile,measured_gain_db,claimed_table_db,claimed_text_db"

# Row order of the reference gain table (same order as the seven curves).
PROFILE_ORDER = ["bpsk-1/2", "qpsk-1/2", "qpsk-3/4", "16qam-1/2",
                 "16qam-3/4", "64qam-2/3", "64qam-3/4"]


def _parse_csv_arg(spec: str) -> tuple[str, str]:
    path, sep, label = spec.rpartition(":")
    if not sep or not path:
        raise ParseError(f"--csv expects path:label, got {spec!r}")
    return path, label


def cmd_plot(args) -> int:
    series = [read_series(path, label)
              for path, label in map(_parse_csv_arg, args.csv)]

    fig, ax = plt.subplots(figsize=(8, 6))
    for s in series:
        ax.semilogy(s.x, s.y, marker="o", label=s.label)
    for name in args.overlay:
        label, fn = OVERLAYS[name]
        lo = min(min(s.x) for s in series)
        hi = max(max(s.x) for s in series)
        grid = np.linspace(lo, hi, 201)
        ax.semilogy(grid, [fn(x) for x in grid], linestyle="--", label=label)
    ax.set_xlabel("Eb/N0 (dB)")
    ax.set_ylabel("BER")
    ax.grid(True, which="both", alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.out)
    plt.close(fig)

    sidecar = Path(args.out).with_suffix(Path(args.out).suffix + ".data.txt")
    sidecar.write_text(sidecar_text(series), newline="\n")
    print(f"wrote {args.out} and {sidecar}")
    return 0


def _format_cell(text: str) -> str:
    try:
        value = float(text)
    except ValueError:
        return "n/a"
    if value != value:  # NaN: the gap was not measurable
        return "n/a"
    return f"{value:+.2f}"


def cmd_table(args) -> int:
    lines = Path(args.gains).read_text().splitlines()
    if not lines or lines[0] != GAINS_HEADER:
        raise ParseError(f"{args.gains}:1: expected header {GAINS_HEADER!r}")
    rows = {}
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 4:
            raise ParseError(f"{args.gains}:{lineno}: expected 4 columns")
        rows[fields[0]] = fields[1:]
    if not rows:
        raise ParseError(f"{args.gains}: no data rows")

    header = f"{'profile':<12} {'measured (dB)':>14} {'claimed table (dB)':>19} {'claimed text (dB)':>18}"
    out_lines = [header, "-" * len(header)]
    ordered = [p for p in PROFILE_ORDER if p in rows]
    ordered += [p for p in rows if p not in PROFILE_ORDER]
    for profile in ordered:
        measured, table_db, text_db = (_format_cell(v) for v in rows[profile])
        out_lines.append(f"{profile:<12} {measured:>14} {table_db:>19} {text_db:>18}")
    text = "\n".join(out_lines) + "\n"
    Path(args.out).write_text(text, newline="\n")
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wimax-plots",
                                     description="BER plots and gain tables from simulator CSVs")
    subs = parser.add_subparsers(dest="command", required=True)

    p_plot = subs.add_parser("plot", help="semilog BER-vs-SNR figure from CSV files")
    p_plot.add_argument("--csv", action="append", default=[], metavar="PATH:LABEL",
                        help="input curve; repeat for multiple series")
    p_plot.add_argument("--out", required=True, help="output image (png/svg)")
    p_plot.add_argument("--overlay", action="append", default=[],
                        choices=sorted(OVERLAYS), help="analytic reference curve")
    p_plot.set_defaults(func=cmd_plot)

    p_table = subs.add_parser("table", help="render a gain table as text")
    p_table.add_argument("--gains", required=True, help="gains.csv from sweep-all")
    p_table.add_argument("--out", required=True, help="output text file")
    p_table.set_defaults(func=cmd_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "plot" and not args.csv:
        print("usage error: at least one --csv PATH:LABEL is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
