"""Convolutional coding: K=7 rate-1/2 mother code, puncturing, Viterbi.

The mother code is the mandatory (171, 133)-octal constraint-length-7 code.
Rates 2/3 and 3/4 come from the standard puncturing masks; the receiver
reinserts neutral (zero) metrics at the punctured positions before Viterbi
decoding.  Blocks are zero-tail terminated (m = K - 1 flush bits).

Metric convention: a positive metric favors coded bit 0, matching the soft
demapper's LLR sign.  Hard decisions map to +/-1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np


def _octal_taps(g: int, k: int) -> np.ndarray:
    """Octal generator -> tap vector, index 0 applying to the newest bit."""
    return np.array([(g >> (k - 1 - i)) & 1 for i in range(k)], dtype=np.uint8)


@dataclass(frozen=True)
class ConvCode:
    constraint_length: int = 7
    g0_octal: int = 0o171
    g1_octal: int = 0o133

    @property
    def memory(self) -> int:
        return self.constraint_length - 1

    @property
    def n_states(self) -> int:
        return 1 << self.memory

    def taps(self) -> tuple[np.ndarray, np.ndarray]:
        k = self.constraint_length
        return _octal_taps(self.g0_octal, k), _octal_taps(self.g1_octal, k)

    def __post_init__(self):
        g0, g1 = self.taps()
        for g in (g0, g1):
            if g[0] != 1 or g[-1] != 1:
                raise ValueError("generators must have first and last taps set")


@dataclass(frozen=True)
class PuncturePattern:
    """Keep-mask over one period of 2*period mother-code bits."""

    period: int
    keep_mask: tuple[int, ...]
    effective_rate: Fraction

    def __post_init__(self):
        if len(self.keep_mask) != 2 * self.period:
            raise ValueError("keep_mask must cover 2*period mother bits")
        kept = sum(self.keep_mask)
        if Fraction(kept, 2 * self.period) != Fraction(1, 2) / self.effective_rate:
            raise ValueError("keep_mask popcount inconsistent with effective_rate")


# 802.16 puncturing: masks over the interleaved stream [X1 Y1 X2 Y2 ...].
RATE_1_2 = PuncturePattern(1, (1, 1), Fraction(1, 2))
RATE_2_3 = PuncturePattern(2, (1, 1, 0, 1), Fraction(2, 3))  # X1 Y1 Y2
RATE_3_4 = PuncturePattern(3, (1, 1, 0, 1, 1, 0), Fraction(3, 4))  # X1 Y1 Y2 X3

PUNCTURE_BY_RATE = {
    Fraction(1, 2): RATE_1_2,
    Fraction(2, 3): RATE_2_3,
    Fraction(3, 4): RATE_3_4,
}


def conv_encode(data: np.ndarray, code: ConvCode = ConvCode()) -> np.ndarray:
    """Encode bits with the rate-1/2 mother code, zero-tail terminated.

    Accepts a 1-D block or a 2-D batch (rows are independent blocks).
    Output interleaves the two generator outputs per input bit, G0 first;
    length is 2*(L + m) along the last axis.
    """
    data = np.asarray(data, dtype=np.uint8)
    single = data.ndim == 1
    data = np.atleast_2d(data)
    batch, length = data.shape
    m = code.memory
    padded = np.zeros((batch, length + 2 * m), dtype=np.uint8)
    padded[:, m : m + length] = data  # leading m zeros = initial state, trailing = tail
    g0, g1 = code.taps()
    t = length + m
    out = np.zeros((batch, 2 * t), dtype=np.uint8)
    for i, tap in enumerate(g0):
        if tap:
            out[:, 0::2] ^= padded[:, m - i : m - i + t]
    for i, tap in enumerate(g1):
        if tap:
            out[:, 1::2] ^= padded[:, m - i : m - i + t]
    return out[0] if single else out


def puncture(coded: np.ndarray, pattern: PuncturePattern) -> np.ndarray:
    """Delete mother-code bits at masked-out positions (order preserved)."""
    coded = np.asarray(coded)
    span = 2 * pattern.period
    if coded.shape[-1] % span:
        raise ValueError(f"coded length {coded.shape[-1]} not a multiple of pattern span {span}")
    mask = np.tile(np.asarray(pattern.keep_mask, dtype=bool), coded.shape[-1] // span)
    return coded[..., mask]


def depuncture(received: np.ndarray, pattern: PuncturePattern) -> np.ndarray:
    """Reinsert neutral (0) metrics at punctured positions."""
    received = np.asarray(received, dtype=np.float64)
    kept = sum(pattern.keep_mask)
    if received.shape[-1] % kept:
        raise ValueError(f"metric length {received.shape[-1]} inconsistent with pattern")
    spans = received.shape[-1] // kept
    span = 2 * pattern.period
    mask = np.tile(np.asarray(pattern.keep_mask, dtype=bool), spans)
    out = np.zeros(received.shape[:-1] + (spans * span,), dtype=np.float64)
    out[..., mask] = received
    return out


def bits_to_metrics(bits: np.ndarray) -> np.ndarray:
    """Hard-decision metrics: bit 0 -> +1, bit 1 -> -1."""
    return 1.0 - 2.0 * np.asarray(bits, dtype=np.float64)


class _Trellis:
    """Precomputed predecessor table for a ConvCode; shared and immutable."""

    def __init__(self, code: ConvCode):
        m = code.memory
        n_states = code.n_states
        g0, g1 = code.taps()
        # For each state s and input u: register = [u, bits of s], next
        # state s' = (u << (m-1)) | (s >> 1).
        s = np.arange(n_states)
        reg_bits = ((s[:, None] >> (m - 1 - np.arange(m))) & 1).astype(np.uint8)
        self.next_state = np.empty((n_states, 2), dtype=np.int64)
        self.out0 = np.empty((n_states, 2), dtype=np.int8)  # G0 output
        self.out1 = np.empty((n_states, 2), dtype=np.int8)  # G1 output
        for u in (0, 1):
            reg = np.concatenate([np.full((n_states, 1), u, dtype=np.uint8), reg_bits], axis=1)
            self.next_state[:, u] = (u << (m - 1)) | (s >> 1)
            self.out0[:, u] = reg @ g0.astype(np.int64) & 1
            self.out1[:, u] = reg @ g1.astype(np.int64) & 1
        # Predecessors: prev_state[s', j] for j in {0, 1}, ordered by
        # ascending predecessor index (deterministic tie-breaking).
        self.prev_state = np.empty((n_states, 2), dtype=np.int64)
        self.prev_input = np.empty((n_states, 2), dtype=np.uint8)
        self.prev_sign0 = np.empty((n_states, 2), dtype=np.float64)
        self.prev_sign1 = np.empty((n_states, 2), dtype=np.float64)
        fill = np.zeros(n_states, dtype=np.int64)
        for prev in range(n_states):
            for u in (0, 1):
                nxt = self.next_state[prev, u]
                j = fill[nxt]
                self.prev_state[nxt, j] = prev
                self.prev_input[nxt, j] = u
                # Branch metric sign: +metric matches coded bit 0.
                self.prev_sign0[nxt, j] = 1.0 - 2.0 * self.out0[prev, u]
                self.prev_sign1[nxt, j] = 1.0 - 2.0 * self.out1[prev, u]
                fill[nxt] += 1


_TRELLIS_CACHE: dict[ConvCode, _Trellis] = {}


def _trellis(code: ConvCode) -> _Trellis:
    tr = _TRELLIS_CACHE.get(code)
    if tr is None:
        tr = _TRELLIS_CACHE[code] = _Trellis(code)
    return tr


def viterbi_decode(metrics: np.ndarray, code: ConvCode = ConvCode()) -> np.ndarray:
    """Maximum-likelihood decode of zero-tail-terminated blocks.

    `metrics` holds one value per mother-code bit (positive favors 0);
    accepts a 1-D block or a 2-D batch.  Returns the L-bit message(s) with
    L = len(metrics)/2 - m.  Ties prefer the lower predecessor state index.
    """
    metrics = np.asarray(metrics, dtype=np.float64)
    single = metrics.ndim == 1
    metrics = np.atleast_2d(metrics)
    batch, n = metrics.shape
    m = code.memory
    if n % 2:
        raise ValueError("metric length must be even")
    t_total = n // 2
    length = t_total - m
    if length < 0:
        raise ValueError(f"metric length {n} shorter than the tail (need >= {2 * m})")
    tr = _trellis(code)
    n_states = code.n_states

    neg_inf = -1e30
    pm = np.full((batch, n_states), neg_inf)
    pm[:, 0] = 0.0  # encoder starts in the all-zero state
    decisions = np.empty((batch, t_total, n_states), dtype=np.uint8)
    m0 = metrics[:, 0::2]
    m1 = metrics[:, 1::2]
    for t in range(t_total):
        # Candidate metrics per destination state: (batch, n_states, 2)
        cand = (
            pm[:, tr.prev_state]
            + m0[:, t, None, None] * tr.prev_sign0
            + m1[:, t, None, None] * tr.prev_sign1
        )
        # argmax over the 2 predecessors; ties pick index 0, which holds
        # the lower predecessor state.
        choice = (cand[:, :, 1] > cand[:, :, 0]).astype(np.uint8)
        decisions[:, t] = choice
        pm = np.take_along_axis(cand, choice[:, :, None].astype(np.int64), axis=2)[:, :, 0]

    # Zero-tail termination: the survivor must end in state 0.
    state = np.zeros(batch, dtype=np.int64)
    bits = np.empty((batch, t_total), dtype=np.uint8)
    rows = np.arange(batch)
    for t in range(t_total - 1, -1, -1):
        j = decisions[rows, t, state]
        bits[:, t] = tr.prev_input[state, j]
        state = tr.prev_state[state, j]
    out = bits[:, :length]
    return out[0] if single else out
