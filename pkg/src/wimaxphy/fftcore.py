"""Self-contained radix-2 FFT (iterative, bit-reversal ordered).

Scaling convention: fft applies no scaling, ifft applies 1/N, so
fft(ifft(x)) == x.  Operates along the last axis and accepts batched
input.  Twiddle factor tables are cached per size and immutable.
"""
from __future__ import annotations

import numpy as np

_REV_CACHE: dict[int, np.ndarray] = {}
_TWIDDLE_CACHE: dict[tuple[int, bool], list[np.ndarray]] = {}


def _check_size(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"FFT size must be a power of two, got {n}")
    return n.bit_length() - 1


def _bit_reversal(n: int) -> np.ndarray:
    rev = _REV_CACHE.get(n)
    if rev is None:
        bits = n.bit_length() - 1
        rev = np.zeros(n, dtype=np.int64)
        for i in range(1, n):
            rev[i] = (rev[i >> 1] >> 1) | ((i & 1) << (bits - 1))
        _REV_CACHE[n] = rev
    return rev


def _twiddles(n: int, inverse: bool) -> list[np.ndarray]:
    key = (n, inverse)
    tw = _TWIDDLE_CACHE.get(key)
    if tw is None:
        sign = 1.0 if inverse else -1.0
        tw = []
        half = 1
        while half < n:
            tw.append(np.exp(sign * 2j * np.pi * np.arange(half) / (2 * half)))
            half *= 2
        _TWIDDLE_CACHE[key] = tw
    return tw


def _transform(x: np.ndarray, inverse: bool) -> np.ndarray:
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    _check_size(n)
    out = x[..., _bit_reversal(n)].copy()
    for w in _twiddles(n, inverse):
        half = w.size
        size = 2 * half
        blocks = out.reshape(x.shape[:-1] + (n // size, size))
        even = blocks[..., :half].copy()
        odd = blocks[..., half:] * w
        blocks[..., :half] = even + odd
        blocks[..., half:] = even - odd
    return out


def fft(time: np.ndarray) -> np.ndarray:
    """Forward DFT (no scaling) along the last axis."""
    return _transform(time, inverse=False)


def ifft(freq: np.ndarray) -> np.ndarray:
    """Inverse DFT with 1/N scaling along the last axis."""
    out = _transform(freq, inverse=True)
    out /= out.shape[-1]
    return out


def naive_dft(time: np.ndarray) -> np.ndarray:
    """Direct O(N^2) DFT, the correctness oracle for fft()."""
    time = np.asarray(time, dtype=np.complex128)
    n = time.shape[-1]
    k = np.arange(n)
    w = np.exp(-2j * np.pi * np.outer(k, k) / n)
    return time @ w.T
