"""Closed-form BPSK reference curves for overlaying on measured data."""
from __future__ import annotations

import math


def bpsk_awgn_ber(eb_n0_db: float) -> float:
    """Pb = Q(sqrt(2 Eb/N0)) over AWGN."""
    gamma = 10.0 ** (eb_n0_db / 10.0)
    return 0.5 * math.erfc(math.sqrt(gamma))  # Q(sqrt(2g)) = erfc(sqrt(g))/2


def bpsk_rayleigh_ber(eb_n0_db: float) -> float:
    """Pb = 0.5 (1 - sqrt(g / (1 + g))) over flat Rayleigh fading."""
    gamma = 10.0 ** (eb_n0_db / 10.0)
    return 0.5 * (1.0 - math.sqrt(gamma / (1.0 + gamma)))


OVERLAYS = {
    "bpsk-awgn": ("BPSK AWGN (analytic)", bpsk_awgn_ber),
    "bpsk-rayleigh": ("BPSK Rayleigh (analytic)", bpsk_rayleigh_ber),
}
