"""OFDM symbol assembly, cyclic prefix, and pilot channel estimation.

Default layout is the fixed-WiMAX 256-point OFDM symbol: 200 used
carriers at logical offsets -100..+100 (DC excluded), of which 8 are
pilots at +/-88, +/-63, +/-38, +/-13 and 192 carry data.  The remaining
56 bins (DC plus guard bands) stay null.  Pilots transmit +1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .fftcore import fft, ifft, naive_dft  # noqa: F401  (transform ops live here too)

PILOT_OFFSETS_256 = (-88, -63, -38, -13, 13, 38, 63, 88)
PILOT_VALUE = 1.0 + 0.0j


def _wimax_layout(nfft: int) -> tuple[np.ndarray, np.ndarray]:
    """(data_carriers, pilot_carriers) FFT-bin indices for the 256 layout,
    scaled proportionally for other power-of-two sizes."""
    scale = nfft / 256
    n_side = int(round(100 * scale))
    used = [c for c in range(-n_side, n_side + 1) if c != 0]
    pilots = sorted(int(round(p * scale)) for p in PILOT_OFFSETS_256)
    data = [c for c in used if c not in pilots]
    to_bin = lambda c: c % nfft
    return (np.array([to_bin(c) for c in data], dtype=np.int64),
            np.array([to_bin(c) for c in pilots], dtype=np.int64))


@dataclass(frozen=True)
class OfdmParams:
    nfft: int = 256
    cp_ratio: Fraction = Fraction(1, 8)
    data_carriers: np.ndarray = field(default=None, compare=False)
    pilot_carriers: np.ndarray = field(default=None, compare=False)

    def __post_init__(self):
        if self.nfft < 4 or self.nfft & (self.nfft - 1):
            raise ValueError(f"nfft must be a power of two, got {self.nfft}")
        if self.cp_ratio not in (Fraction(1, 4), Fraction(1, 8), Fraction(1, 16), Fraction(1, 32)):
            raise ValueError(f"cp_ratio must be 1/4, 1/8, 1/16 or 1/32, got {self.cp_ratio}")
        if self.data_carriers is None or self.pilot_carriers is None:
            data, pilots = _wimax_layout(self.nfft)
            object.__setattr__(self, "data_carriers", data)
            object.__setattr__(self, "pilot_carriers", pilots)
        occ = set(self.data_carriers.tolist()) | set(self.pilot_carriers.tolist())
        if len(occ) != self.data_carriers.size + self.pilot_carriers.size:
            raise ValueError("data and pilot carrier sets overlap")
        if (self.nfft * self.cp_ratio).denominator != 1:
            raise ValueError("cp_ratio * nfft must be an integer")

    @property
    def n_data(self) -> int:
        return int(self.data_carriers.size)

    @property
    def n_pilots(self) -> int:
        return int(self.pilot_carriers.size)

    @property
    def cp_length(self) -> int:
        return int(self.nfft * self.cp_ratio)


def assemble_symbol(data: np.ndarray, params: OfdmParams) -> np.ndarray:
    """Place data symbols on the data carriers, pilots on theirs, nulls
    elsewhere.  Accepts batched input along leading axes."""
    data = np.asarray(data, dtype=np.complex128)
    if data.shape[-1] != params.n_data:
        raise ValueError(f"expected {params.n_data} data symbols, got {data.shape[-1]}")
    freq = np.zeros(data.shape[:-1] + (params.nfft,), dtype=np.complex128)
    freq[..., params.data_carriers] = data
    freq[..., params.pilot_carriers] = PILOT_VALUE
    return freq


def disassemble_symbol(freq: np.ndarray, params: OfdmParams) -> tuple[np.ndarray, np.ndarray]:
    """Extract (data bins, pilot bins) from a received frequency vector."""
    freq = np.asarray(freq)
    if freq.shape[-1] != params.nfft:
        raise ValueError(f"expected {params.nfft} bins, got {freq.shape[-1]}")
    return freq[..., params.data_carriers], freq[..., params.pilot_carriers]


def add_cp(time: np.ndarray, cp_length: int) -> np.ndarray:
    """Prepend the last cp_length samples as a cyclic prefix."""
    time = np.asarray(time)
    if cp_length >= time.shape[-1]:
        raise ValueError(f"cp_length {cp_length} must be < symbol length {time.shape[-1]}")
    return np.concatenate([time[..., -cp_length:], time], axis=-1)


def remove_cp(time: np.ndarray, cp_length: int) -> np.ndarray:
    """Drop the first cp_length samples."""
    return np.asarray(time)[..., cp_length:]


def ls_channel_estimate(rx_pilots: np.ndarray, tx_pilots: np.ndarray,
                        params: OfdmParams) -> np.ndarray:
    """Least-squares pilot estimate, linearly interpolated to data carriers.

    Interpolation runs over the logical carrier order (guards excluded);
    data carriers outside the outermost pilots extend flat.  Returns the
    complex gain per data carrier, batched over leading axes.
    """
    rx_pilots = np.asarray(rx_pilots, dtype=np.complex128)
    tx_pilots = np.asarray(tx_pilots, dtype=np.complex128)
    if rx_pilots.shape[-1] != params.n_pilots or tx_pilots.shape[-1] != params.n_pilots:
        raise ValueError("pilot counts do not match the layout")
    h_pilot = rx_pilots / tx_pilots
    # Logical positions: shift bins above nfft/2 to negative offsets.
    logical = lambda bins: np.where(bins > params.nfft // 2, bins - params.nfft, bins)
    px = logical(params.pilot_carriers).astype(np.float64)
    dx = logical(params.data_carriers).astype(np.float64)
    order = np.argsort(px)
    px = px[order]
    hp = h_pilot[..., order]
    flat = hp.reshape(-1, params.n_pilots)
    est = np.empty((flat.shape[0], params.n_data), dtype=np.complex128)
    for i in range(flat.shape[0]):
        est[i] = np.interp(dx, px, flat[i].real) + 1j * np.interp(dx, px, flat[i].imag)
    return est.reshape(rx_pilots.shape[:-1] + (params.n_data,))
