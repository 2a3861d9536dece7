"""Gray-coded BPSK/QPSK/16QAM/64QAM mapping and hard/soft demapping.

Constellations carry unit average energy.  I and Q are Gray-coded
independently; for 16QAM the first half of each symbol's bits selects the
I level, the second half the Q level.  LLR sign convention: positive
favors bit 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Per-axis Gray code: amplitude levels in bit-label order.
_GRAY_2 = {0: -1, 1: +1}
_GRAY_4 = {0b00: -3, 0b01: -1, 0b11: +1, 0b10: +3}
_GRAY_8 = {0b000: -7, 0b001: -5, 0b011: -3, 0b010: -1,
           0b110: +1, 0b111: +3, 0b101: +5, 0b100: +7}


def _axis_levels(bits_per_axis: int) -> dict[int, int]:
    return {1: _GRAY_2, 2: _GRAY_4, 3: _GRAY_8}[bits_per_axis]


@dataclass(frozen=True)
class Constellation:
    order: int
    points: np.ndarray = field(compare=False)  # indexed by integer label
    normalization: float = field(compare=False)

    @property
    def bits_per_symbol(self) -> int:
        return self.order.bit_length() - 1


def _build(order: int) -> Constellation:
    if order == 2:
        raw = np.array([_GRAY_2[b] for b in range(2)], dtype=np.complex128)
    else:
        bps = order.bit_length() - 1
        half = bps // 2
        levels = _axis_levels(half)
        raw = np.empty(order, dtype=np.complex128)
        for label in range(order):
            i_bits = label >> half
            q_bits = label & ((1 << half) - 1)
            raw[label] = levels[i_bits] + 1j * levels[q_bits]
    norm = 1.0 / np.sqrt(np.mean(np.abs(raw) ** 2))
    return Constellation(order, raw * norm, norm)


_CONSTELLATIONS = {m: _build(m) for m in (2, 4, 16, 64)}


def constellation(order: int) -> Constellation:
    try:
        return _CONSTELLATIONS[order]
    except KeyError:
        raise ValueError(f"unsupported constellation order {order} (use 2, 4, 16, 64)") from None


def map_bits(bits: np.ndarray, c: Constellation) -> np.ndarray:
    """Map groups of bits_per_symbol bits to complex symbols, MSB first."""
    bits = np.asarray(bits, dtype=np.uint8)
    bps = c.bits_per_symbol
    if bits.shape[-1] % bps:
        raise ValueError(f"bit count {bits.shape[-1]} not a multiple of {bps}")
    groups = bits.reshape(bits.shape[:-1] + (-1, bps))
    weights = 1 << np.arange(bps - 1, -1, -1)
    labels = groups @ weights
    return c.points[labels]


def _labels_hard(symbols: np.ndarray, c: Constellation) -> np.ndarray:
    """Nearest-point labels; distance ties go to the lowest label index."""
    d = np.abs(symbols[..., None] - c.points) ** 2
    return np.argmin(d, axis=-1)


def demap_hard(symbols: np.ndarray, c: Constellation) -> np.ndarray:
    """Euclidean-nearest hard demapping back to bits."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    labels = _labels_hard(symbols, c)
    bps = c.bits_per_symbol
    shifts = np.arange(bps - 1, -1, -1)
    bits = (labels[..., None] >> shifts) & 1
    return bits.reshape(symbols.shape[:-1] + (-1,)).astype(np.uint8)


# Per (constellation, bit position): boolean masks over the point labels.
def _bit_masks(c: Constellation) -> np.ndarray:
    bps = c.bits_per_symbol
    labels = np.arange(c.order)
    return ((labels[None, :] >> np.arange(bps - 1, -1, -1)[:, None]) & 1).astype(bool)


def demap_soft(symbols: np.ndarray, noise_var, c: Constellation) -> np.ndarray:
    """Max-log LLRs per coded bit: positive favors bit 0.

    LLR(b) = (min_{p: b=1} |y-p|^2 - min_{p: b=0} |y-p|^2) / noise_var.
    `noise_var` may be a scalar or per-symbol array (post-equalization
    noise varies with the channel gain).
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    noise_var = np.asarray(noise_var, dtype=np.float64)
    if np.any(noise_var <= 0):
        raise ValueError("noise_var must be positive")
    d = np.abs(symbols[..., None] - c.points) ** 2
    masks = _bit_masks(c)
    bps = c.bits_per_symbol
    llrs = np.empty(symbols.shape + (bps,), dtype=np.float64)
    for b in range(bps):
        d1 = np.min(np.where(masks[b], d, np.inf), axis=-1)
        d0 = np.min(np.where(masks[b], np.inf, d), axis=-1)
        llrs[..., b] = d1 - d0
    llrs /= noise_var[..., None] if noise_var.ndim else noise_var
    return llrs.reshape(symbols.shape[:-1] + (-1,))
