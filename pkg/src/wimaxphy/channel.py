"""Channel models: AWGN, flat Rayleigh block fading, i.i.d. MIMO matrices.

All randomness flows through counter-keyed generators derived from
(master seed, SNR index, trial index, stage), so trials can run in any
order or in parallel and still draw identical streams.

SNR calibration: Eb/N0 is the configured axis; Es/N0 per transmitted
symbol follows from bits per symbol, total code rate, the used-carrier
and cyclic-prefix overhead, and the transmit antenna count.  Total
transmit power is constant across antenna counts (the 1/sqrt(Nt) stream
scaling lives on the transmit side), so the per-bin noise variance is
independent of Nt.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

# Stage identifiers for RNG keying.
STAGE_PAYLOAD = 0
STAGE_CHANNEL = 1
STAGE_NOISE = 2


def rng_for(master_seed: int, snr_index: int, trial_index: int, stage: int) -> np.random.Generator:
    """Counter-based generator for one (SNR point, trial, stage) cell."""
    seq = np.random.SeedSequence(entropy=master_seed,
                                 spawn_key=(snr_index, trial_index, stage))
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True)
class SnrSpec:
    """Conversion from per-information-bit SNR to per-symbol SNR."""

    eb_n0_db: float
    bits_per_symbol: int
    code_rate: Fraction  # total (CC times optional RS); 1 for uncoded
    n_data: int
    nfft: int
    cp_length: int
    nt: int = 1
    include_overhead: bool = True  # False for closed-form reference modes

    @property
    def used_fraction(self) -> float:
        return (self.n_data / self.nfft) * (self.nfft / (self.nfft + self.cp_length))

    @property
    def es_n0(self) -> float:
        """Linear Es/N0 per transmitted symbol."""
        eb = 10.0 ** (self.eb_n0_db / 10.0)
        overhead = self.used_fraction if self.include_overhead else 1.0
        return eb * self.bits_per_symbol * float(self.code_rate) * overhead / self.nt

    @property
    def noise_var(self) -> float:
        """Per-bin complex noise variance; per-antenna symbols carry 1/nt."""
        return (1.0 / self.nt) / self.es_n0


def awgn(x: np.ndarray, noise_var: float, rng: np.random.Generator) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise of variance noise_var."""
    if noise_var < 0:
        raise ValueError("noise_var must be >= 0")
    x = np.asarray(x, dtype=np.complex128)
    if noise_var == 0:
        return x.copy()
    sigma = np.sqrt(noise_var / 2.0)
    n = rng.normal(0.0, sigma, x.shape) + 1j * rng.normal(0.0, sigma, x.shape)
    return x + n


def rayleigh_gain(rng: np.random.Generator, shape=()) -> np.ndarray:
    """Unit-mean-square complex Gaussian gains: (g1 + j*g2)/sqrt(2)."""
    g = rng.normal(0.0, 1.0, shape + (2,))
    return (g[..., 0] + 1j * g[..., 1]) / np.sqrt(2.0)


def rayleigh_flat(x: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, complex]:
    """Apply one flat Rayleigh gain to a whole coherence block."""
    h = complex(rayleigh_gain(rng))
    return np.asarray(x, dtype=np.complex128) * h, h


def mimo_channel(nt: int, nr: int, rng: np.random.Generator, blocks: int | None = None) -> np.ndarray:
    """i.i.d. unit-variance complex Gaussian channel matrices (blocks, nr, nt)."""
    shape = (nr, nt) if blocks is None else (blocks, nr, nt)
    return rayleigh_gain(rng, shape)


def mimo_apply(x_streams: np.ndarray, h: np.ndarray, noise_var: float,
               rng: np.random.Generator) -> np.ndarray:
    """y = H x + n per symbol time.

    `x_streams` has shape (nt, L); `h` is (nr, nt).  Returns (nr, L).
    """
    x_streams = np.asarray(x_streams, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    if x_streams.ndim != 2 or h.ndim != 2 or h.shape[1] != x_streams.shape[0]:
        raise ValueError(f"dimension mismatch: H {h.shape} vs streams {x_streams.shape}")
    return awgn(h @ x_streams, noise_var, rng)
