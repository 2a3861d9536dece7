"""Two-permutation block interleaver over one OFDM symbol of coded bits.

First permutation spreads adjacent bits across 16 columns (the classic
row/column matrix read); the second rotates bits within each subcarrier's
constellation word so adjacent bits alternate between high- and
low-reliability positions.  With 1 coded bit per subcarrier the second
step degenerates to the identity (plain matrix interleaver).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COLUMNS = 16


@dataclass(frozen=True)
class InterleaverParams:
    ncbps: int  # coded bits per OFDM symbol
    ncpc: int  # coded bits per subcarrier (1, 2, 4, 6)

    def __post_init__(self):
        if self.ncpc not in (1, 2, 4, 6):
            raise ValueError(f"ncpc must be 1, 2, 4 or 6, got {self.ncpc}")
        if self.ncbps % COLUMNS:
            raise ValueError(f"ncbps must be a multiple of {COLUMNS}, got {self.ncbps}")


def index_map(params: InterleaverParams) -> np.ndarray:
    """Positions: bit k of the input lands at output index map[k]."""
    n = params.ncbps
    s = max(params.ncpc // 2, 1)
    k = np.arange(n)
    m = (n // COLUMNS) * (k % COLUMNS) + k // COLUMNS
    j = s * (m // s) + (m + n - (COLUMNS * m // n)) % s
    return j


_MAP_CACHE: dict[InterleaverParams, tuple[np.ndarray, np.ndarray]] = {}


def _maps(params: InterleaverParams) -> tuple[np.ndarray, np.ndarray]:
    maps = _MAP_CACHE.get(params)
    if maps is None:
        fwd = index_map(params)
        inv = np.empty_like(fwd)
        inv[fwd] = np.arange(fwd.size)
        maps = _MAP_CACHE[params] = (fwd, inv)
    return maps


def interleave(bits: np.ndarray, params: InterleaverParams) -> np.ndarray:
    """Permute a block (or batch of blocks) of ncbps coded bits."""
    bits = np.asarray(bits)
    if bits.shape[-1] != params.ncbps:
        raise ValueError(f"block length {bits.shape[-1]} != ncbps {params.ncbps}")
    fwd, _ = _maps(params)
    out = np.empty_like(bits)
    out[..., fwd] = bits
    return out


def deinterleave(bits: np.ndarray, params: InterleaverParams) -> np.ndarray:
    """Exact inverse of interleave; also valid on soft metrics."""
    bits = np.asarray(bits)
    if bits.shape[-1] != params.ncbps:
        raise ValueError(f"block length {bits.shape[-1]} != ncbps {params.ncbps}")
    _, inv = _maps(params)
    out = np.empty_like(bits)
    out[..., inv] = bits
    return out
