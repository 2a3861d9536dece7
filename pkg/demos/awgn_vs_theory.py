"""Compare simulated uncoded BPSK over AWGN against the textbook curve.

Run:  python3 demos/awgn_vs_theory.py

With overhead accounting disabled, the measured BER should track
Q(sqrt(2 Eb/N0)) to within Monte Carlo noise at every point.
"""
import math

from wimaxphy import SimConfig, run_ber_sweep


def q_function(x: float) -> float:
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def main() -> None:
    cfg = SimConfig(profile="bpsk-1/2", uncoded=True, include_overhead=False,
                    snr_start=0, snr_stop=8, snr_step=2,
                    min_bit_errors=200, max_bits=2_000_000, seed=0).validate()
    curve = run_ber_sweep(cfg)
    print(f"{'Eb/N0 (dB)':>10}  {'simulated':>12}  {'theory':>12}  {'bits':>9}")
    for p in curve.points:
        theory = q_function(math.sqrt(2.0 * 10 ** (p.eb_n0_db / 10.0)))
        print(f"{p.eb_n0_db:>10.1f}  {p.ber:>12.3e}  {theory:>12.3e}  {p.bits_sent:>9}")


if __name__ == "__main__":
    main()
