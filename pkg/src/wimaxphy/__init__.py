"""OFDM physical-layer Monte Carlo simulator with spatial multiplexing.

Submodules: scrambler, convcode, rs, interleaver, mapping, fftcore, ofdm,
channel, mimo, profiles, config, simulator, cli.
"""

from .config import SimConfig, ConfigError
from .simulator import (BerCurve, BerPoint, run_ber_sweep, run_frame,
                        snr_gain, UnbracketedTargetError)

__all__ = [
    "SimConfig",
    "ConfigError",
    "BerCurve",
    "BerPoint",
    "run_ber_sweep",
    "run_frame",
    "snr_gain",
    "UnbracketedTargetError",
]

__version__ = "0.1.0"
