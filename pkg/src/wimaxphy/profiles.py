"""Burst profiles and the single source of truth for chain sizing.

A burst profile binds a constellation to a convolutional code rate.  The
seven profiles are the simulated curve set; sizing arithmetic (coded bits
per symbol, mother-code bits, information bits per FEC block) lives here
so every stage contract stays consistent.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .convcode import ConvCode, PuncturePattern, PUNCTURE_BY_RATE

PROFILES: dict[str, tuple[int, Fraction]] = {
    "bpsk-1/2": (2, Fraction(1, 2)),
    "qpsk-1/2": (4, Fraction(1, 2)),
    "qpsk-3/4": (4, Fraction(3, 4)),
    "16qam-1/2": (16, Fraction(1, 2)),
    "16qam-3/4": (16, Fraction(3, 4)),
    "64qam-2/3": (64, Fraction(2, 3)),
    "64qam-3/4": (64, Fraction(3, 4)),
}

# Fig. 6 presentation order.
PROFILE_ORDER = list(PROFILES)


@dataclass(frozen=True)
class BurstProfile:
    name: str
    order: int
    code_rate: Fraction

    @property
    def bits_per_symbol(self) -> int:
        return self.order.bit_length() - 1

    @property
    def puncture(self) -> PuncturePattern:
        return PUNCTURE_BY_RATE[self.code_rate]


def burst_profile(name: str) -> BurstProfile:
    try:
        order, rate = PROFILES[name.lower()]
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; choose from {', '.join(PROFILES)}") from None
    return BurstProfile(name.lower(), order, rate)


@dataclass(frozen=True)
class FrameSizing:
    """Bit budget for one FEC block = one OFDM symbol's data payload."""

    ncbps: int  # coded bits per OFDM symbol
    mother_bits: int  # rate-1/2 encoder output bits before puncturing
    conv_input_bits: int  # encoder input incl. nothing (tail added inside)
    info_bits: int  # information bits per block (before optional RS)
    rs_n: int = 0  # RS codeword bytes, 0 when RS disabled
    rs_k: int = 0
    rs_pad_bits: int = 0  # zero bits appended after the RS codeword


def frame_sizing(profile: BurstProfile, n_data: int, code: ConvCode = ConvCode(),
                 rs_enabled: bool = False, rs_t: int = 8) -> FrameSizing:
    """Derive all stage lengths for one FEC block.

    ncbps = n_data * bits_per_symbol coded bits fill one OFDM symbol;
    puncturing expands that to 2*rate*ncbps mother bits, and zero-tail
    termination reserves m input bits.  With RS enabled the convolutional
    payload holds an RS codeword of floor(payload/8) bytes (plus zero
    padding), shrinking the information bits to 8*k.
    """
    ncbps = n_data * profile.bits_per_symbol
    mother = profile.code_rate * ncbps * 2
    if mother.denominator != 1:
        raise ValueError(f"profile {profile.name} does not tile {n_data} data carriers")
    mother_bits = int(mother)
    if mother_bits % (2 * profile.puncture.period):
        raise ValueError(f"mother block of {mother_bits} bits does not tile the puncture span")
    conv_input = mother_bits // 2 - code.memory
    if conv_input <= 0:
        raise ValueError("OFDM symbol too small for the FEC tail")
    if not rs_enabled:
        return FrameSizing(ncbps, mother_bits, conv_input, conv_input)
    rs_n = conv_input // 8
    t = min(rs_t, (rs_n - 1) // 2)
    if t < 1:
        raise ValueError(f"convolutional payload of {conv_input} bits too small for an outer RS code")
    rs_k = rs_n - 2 * t
    return FrameSizing(ncbps, mother_bits, conv_input, 8 * rs_k,
                       rs_n=rs_n, rs_k=rs_k, rs_pad_bits=conv_input - 8 * rs_n)
