"""Burst randomization via a 15-bit LFSR (polynomial 1 + x^14 + x^15).

The generator is the standard 802.16 scrambler: a 15-cell shift register
whose feedback bit is the XOR of cells 14 and 15 (1-indexed from the input
side).  Randomization and derandomization are the same XOR operation.
"""
from __future__ import annotations

import numpy as np

# Standard 802.16 downlink initialization vector, MSB (cell 1) first.
DEFAULT_SEED = "100101010000000"

REGISTER_LENGTH = 15


class LfsrState:
    """Immutable 15-cell shift register state.

    The register must never be all-zero (the sequence would lock at 0).
    """

    __slots__ = ("register",)

    def __init__(self, register: tuple[int, ...]):
        if len(register) != REGISTER_LENGTH:
            raise ValueError(f"register must have {REGISTER_LENGTH} cells, got {len(register)}")
        if not any(register):
            raise ValueError("all-zero LFSR state is not allowed")
        if any(b not in (0, 1) for b in register):
            raise ValueError("register cells must be 0 or 1")
        object.__setattr__(self, "register", tuple(register))

    def __setattr__(self, name, value):
        raise AttributeError("LfsrState is immutable")

    @classmethod
    def from_string(cls, bits: str) -> "LfsrState":
        """Build a state from a 15-character binary string, cell 1 first."""
        if len(bits) != REGISTER_LENGTH or set(bits) - {"0", "1"}:
            raise ValueError(f"seed must be a {REGISTER_LENGTH}-character binary string: {bits!r}")
        return cls(tuple(int(c) for c in bits))

    def __eq__(self, other):
        return isinstance(other, LfsrState) and self.register == other.register

    def __hash__(self):
        return hash(self.register)

    def __repr__(self):
        return f"LfsrState({''.join(map(str, self.register))})"


def default_seed() -> LfsrState:
    return LfsrState.from_string(DEFAULT_SEED)


def prbs_next(state: LfsrState) -> tuple[int, LfsrState]:
    """Step the shift register once; return (output bit, next state).

    The output bit is the feedback bit b14 XOR b15, which is also shifted
    back in at the input side.
    """
    r = state.register
    bit = r[13] ^ r[14]
    return bit, LfsrState((bit,) + r[:-1])


def prbs_sequence(n: int, seed: LfsrState) -> np.ndarray:
    """Generate the first n PRBS bits from the given seed, as uint8."""
    out = np.empty(n, dtype=np.uint8)
    r = list(seed.register)
    for i in range(n):
        bit = r[13] ^ r[14]
        out[i] = bit
        r = [bit] + r[:-1]
    return out


def scramble(data: np.ndarray, seed: LfsrState | None = None) -> np.ndarray:
    """XOR a bit block with the PRBS starting from `seed`.

    Involution: applying scramble twice with the same seed restores the
    input, so this is also the derandomizer.
    """
    if seed is None:
        seed = default_seed()
    data = np.asarray(data, dtype=np.uint8)
    if data.size == 0:
        return data.copy()
    return data ^ prbs_sequence(data.shape[-1], seed)
