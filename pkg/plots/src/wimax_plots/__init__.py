"""Plotting companion for the wimaxphy simulator's CSV output."""

from .curves import ParseError, Series, read_series
from .overlays import OVERLAYS, bpsk_awgn_ber, bpsk_rayleigh_ber

__all__ = [
    "OVERLAYS",
    "ParseError",
    "Series",
    "bpsk_awgn_ber",
    "bpsk_rayleigh_ber",
    "read_series",
]

__version__ = "0.1.0"
