"""Command-line front end: `run`, `gain`, and `sweep-all`.

Exit codes: 0 success, 2 configuration error, 3 target BER not bracketed.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, SimConfig, load_config
from .profiles import PROFILE_ORDER
from . import simulator as sim

EXIT_CONFIG = 2
EXIT_UNBRACKETED = 3

# Claimed SNR improvements (dB) from spatial multiplexing over Rayleigh,
# reported for reference next to measured gaps; the qpsk-1/2 claim is
# quoted inconsistently (3 dB in table form, 2 dB in prose), so both
# values are carried.
CLAIMED_GAINS = {
    "bpsk-1/2": (2.0, 2.0),
    "qpsk-1/2": (3.0, 2.0),
    "qpsk-3/4": (2.0, 2.0),
    "16qam-1/2": (5.0, 5.0),
    "16qam-3/4": (2.0, 2.0),
    "64qam-2/3": (3.0, 3.0),
    "64qam-3/4": (2.0, 2.0),
}

GAINS_HEADER = "profile,measured_gain_db,claimed_table_db,claimed_text_db"


def _parse_snr(spec: str) -> tuple[float, float, float]:
    try:
        start, step, stop = (float(s) for s in spec.split(":"))
    except ValueError:
        raise ConfigError(f"--snr expects start:step:stop, got {spec!r}") from None
    return start, step, stop


def _parse_mimo(spec: str) -> tuple[int, int]:
    if spec.lower() == "siso":
        return 1, 1
    try:
        nt, nr = (int(s) for s in spec.lower().split("x"))
        return nt, nr
    except ValueError:
        raise ConfigError(f"--mimo expects siso or NtxNr, got {spec!r}") from None


def _config_from_args(args) -> SimConfig:
    cfg = load_config(args.config) if args.config else SimConfig()
    updates = {}
    if args.profile is not None:
        updates["profile"] = args.profile
    if args.channel is not None:
        updates["channel"] = args.channel
    if args.mimo is not None:
        updates["nt"], updates["nr"] = _parse_mimo(args.mimo)
    if args.detector is not None:
        updates["detector"] = args.detector
    if args.snr is not None:
        start, step, stop = _parse_snr(args.snr)
        updates.update(snr_start=start, snr_step=step, snr_stop=stop)
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.uncoded:
        updates["uncoded"] = True
    if args.metric is not None:
        updates["metric"] = args.metric
    if args.min_errors is not None:
        updates["min_bit_errors"] = args.min_errors
    if args.max_bits is not None:
        updates["max_bits"] = args.max_bits
    return replace(cfg, **updates).validate()


def _add_run_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key=value config file (flags override)")
    p.add_argument("--profile", choices=PROFILE_ORDER)
    p.add_argument("--channel", choices=["awgn", "rayleigh"])
    p.add_argument("--mimo", help="siso or NtxNr, e.g. 2x2")
    p.add_argument("--detector", choices=["zf", "mmse", "ml"])
    p.add_argument("--snr", help="Eb/N0 grid in dB as start:step:stop")
    p.add_argument("--seed", type=int)
    p.add_argument("--uncoded", action="store_true", help="bypass scrambler/FEC/interleaver")
    p.add_argument("--metric", choices=["hard", "soft"])
    p.add_argument("--min-errors", type=int, help="stop after this many bit errors per point")
    p.add_argument("--max-bits", type=int, help="bit budget per SNR point")
    p.add_argument("--workers", type=int, default=1)


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    curve = sim.run_ber_sweep(cfg, workers=args.workers)
    sim.write_curve(curve, args.out, cfg)
    print(f"wrote {args.out} ({len(curve.points)} SNR points)")
    return 0


def cmd_gain(args) -> int:
    curve_a = sim.read_curve(args.a)
    curve_b = sim.read_curve(args.b)
    gain = sim.snr_gain(curve_a, curve_b, args.ber)
    print(f"{gain:.4f}")
    return 0


def cmd_sweep_all(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    gains_lines = [GAINS_HEADER]
    for profile in PROFILE_ORDER:
        tag = profile.replace("/", "_")
        curves = {}
        for label, nt, nr in (("siso", 1, 1), ("mimo2x2", 2, 2)):
            args.profile, args.mimo = profile, f"{nt}x{nr}"
            cfg = _config_from_args(args)
            curve = sim.run_ber_sweep(cfg, workers=args.workers, label=f"{label} {profile}")
            path = out_dir / f"{label}_{tag}.csv"
            sim.write_curve(curve, path, cfg)
            curves[label] = curve
            print(f"wrote {path}")
        try:
            measured = sim.snr_gain(curves["siso"], curves["mimo2x2"], args.ber)
            measured_txt = f"{measured:.4f}"
        except sim.UnbracketedTargetError as e:
            print(f"warning: {e}", file=sys.stderr)
            measured_txt = "nan"
        table_db, text_db = CLAIMED_GAINS[profile]
        gains_lines.append(f"{profile},{measured_txt},{table_db:.10g},{text_db:.10g}")
    gains_path = out_dir / "gains.csv"
    gains_path.write_text("\n".join(gains_lines) + "\n", newline="\n")
    print(f"wrote {gains_path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wimaxphy",
                                     description="OFDM/MIMO physical-layer BER simulator")
    subs = parser.add_subparsers(dest="command", required=True)

    p_run = subs.add_parser("run", help="run one BER sweep and write a CSV")
    _add_run_options(p_run)
    p_run.add_argument("--out", required=True, help="output CSV path")
    p_run.set_defaults(func=cmd_run)

    p_gain = subs.add_parser("gain", help="SNR gap between two curves at a target BER")
    p_gain.add_argument("--a", required=True, help="CSV of the reference (worse) curve")
    p_gain.add_argument("--b", required=True, help="CSV of the improved curve")
    p_gain.add_argument("--ber", type=float, default=1e-3)
    p_gain.set_defaults(func=cmd_gain)

    p_all = subs.add_parser("sweep-all",
                            help="all seven profiles, SISO and 2x2, plus a gain table")
    _add_run_options(p_all)
    p_all.add_argument("--out-dir", required=True)
    p_all.add_argument("--ber", type=float, default=1e-3,
                       help="target BER for the gain table")
    p_all.set_defaults(func=cmd_sweep_all)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except sim.UnbracketedTargetError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNBRACKETED


if __name__ == "__main__":
    sys.exit(main())
