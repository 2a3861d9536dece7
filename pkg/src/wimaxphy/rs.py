"""Reed-Solomon codes over GF(256) with Berlekamp-Massey decoding.

Field polynomial is x^8 + x^4 + x^3 + x^2 + 1 (0x11D), generator element
alpha = 2, code generator roots alpha^0 .. alpha^(2t-1) -- the 802.16
conventions.  Codes shorter than 255 symbols are shortened codes (leading
zero symbols implied, never transmitted).

Decoding is bounded-distance: up to t = (n-k)/2 symbol errors are
corrected; an inconsistent error locator yields DecodeFailure, which the
caller treats as a frame error, not a fault.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_PRIM_POLY = 0x11D
_FIELD = 256

# exp table doubled so products of two log values never need a modulo.
_EXP = np.zeros(2 * _FIELD, dtype=np.int64)
_LOG = np.zeros(_FIELD, dtype=np.int64)
_x = 1
for _i in range(_FIELD - 1):
    _EXP[_i] = _x
    _LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= _PRIM_POLY
_EXP[_FIELD - 1 : 2 * (_FIELD - 1)] = _EXP[: _FIELD - 1]


def gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(_EXP[_LOG[a] + _LOG[b]])


def gf_div(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(256)")
    if a == 0:
        return 0
    return int(_EXP[_LOG[a] - _LOG[b] + _FIELD - 1])


def gf_pow(a: int, p: int) -> int:
    if a == 0:
        return 0
    return int(_EXP[(_LOG[a] * p) % (_FIELD - 1)])


def _poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] ^= gf_mul(a, b)
    return out


def _poly_eval(p: list[int], x: int) -> int:
    """Evaluate polynomial (highest degree first) at x via Horner."""
    y = 0
    for c in p:
        y = gf_mul(y, x) ^ c
    return y


class DecodeFailure(Exception):
    """Raised when the received word is outside the decoding radius."""


@dataclass(frozen=True)
class RsCode:
    n: int
    k: int

    def __post_init__(self):
        if not (0 < self.k < self.n <= _FIELD - 1):
            raise ValueError(f"invalid RS parameters ({self.n}, {self.k})")
        if (self.n - self.k) % 2:
            raise ValueError("n - k must be even")

    @property
    def t(self) -> int:
        return (self.n - self.k) // 2

    @property
    def n_parity(self) -> int:
        return self.n - self.k

    @property
    def shortening(self) -> int:
        return (_FIELD - 1) - self.n

    def generator_poly(self) -> list[int]:
        """Product of (x - alpha^i) for i = 0 .. n-k-1, highest degree first."""
        g = [1]
        for i in range(self.n_parity):
            g = _poly_mul(g, [1, gf_pow(2, i)])
        return g


# Default codes: the full 802.16 outer code and a small fast test code.
RS_255_239 = RsCode(255, 239)
RS_40_36 = RsCode(40, 36)


def rs_encode(msg: np.ndarray, code: RsCode = RS_255_239) -> np.ndarray:
    """Systematic encode: message symbols followed by n-k parity symbols."""
    msg = np.asarray(msg, dtype=np.uint8)
    if msg.shape != (code.k,):
        raise ValueError(f"message must have {code.k} symbols, got {msg.shape}")
    gen = code.generator_poly()
    rem = [0] * code.n_parity
    for sym in msg.tolist():
        factor = sym ^ rem[0]
        rem = rem[1:] + [0]
        if factor:
            lf = _LOG[factor]
            for i in range(code.n_parity):
                if gen[i + 1]:
                    rem[i] ^= int(_EXP[lf + _LOG[gen[i + 1]]])
    return np.concatenate([msg, np.array(rem, dtype=np.uint8)])


def rs_decode(word: np.ndarray, code: RsCode = RS_255_239) -> tuple[np.ndarray, int]:
    """Bounded-distance decode; returns (message, number of corrected symbols).

    Raises DecodeFailure when the error locator is inconsistent (more than
    t errors detected).  A miscorrection to a different valid codeword is
    possible beyond radius t, as for any bounded-distance decoder.
    """
    word = np.asarray(word, dtype=np.uint8)
    if word.shape != (code.n,):
        raise ValueError(f"word must have {code.n} symbols, got {word.shape}")
    r = word.tolist()
    n_par = code.n_parity

    syndromes = [_poly_eval(r, gf_pow(2, i)) for i in range(n_par)]
    if not any(syndromes):
        return word[: code.k].copy(), 0

    # Berlekamp-Massey: find the error locator Lambda (lowest degree first).
    lam = [1]
    prev = [1]
    l_len = 0
    shift = 1
    b = 1
    for i in range(n_par):
        delta = syndromes[i]
        for j in range(1, min(l_len, len(lam) - 1) + 1):
            delta ^= gf_mul(lam[j], syndromes[i - j])
        if delta == 0:
            shift += 1
            continue
        coef = gf_div(delta, b)
        update = lam[:]
        if len(prev) + shift > len(update):
            update += [0] * (len(prev) + shift - len(update))
        for j, c in enumerate(prev):
            update[j + shift] ^= gf_mul(coef, c)
        if 2 * l_len <= i:
            prev = lam
            lam = update
            l_len = i + 1 - l_len
            b = delta
            shift = 1
        else:
            lam = update
            shift += 1

    deg = len(lam) - 1
    while deg > 0 and lam[deg] == 0:
        deg -= 1
    lam = lam[: deg + 1]
    if deg > code.t:
        raise DecodeFailure(f"error locator degree {deg} exceeds t={code.t}")

    # Chien search over the positions of the (possibly shortened) codeword.
    # Position p (0 = first transmitted symbol) corresponds to codeword
    # location n-1-p, i.e. locator root alpha^-(n-1-p).
    error_pos = []
    for loc in range(code.n):
        x_inv = gf_pow(2, (-(code.n - 1 - loc)) % (_FIELD - 1))
        val = 0
        for j, c in enumerate(lam):
            val ^= gf_mul(c, gf_pow(x_inv, j))
        if val == 0:
            error_pos.append(loc)
    if len(error_pos) != deg:
        raise DecodeFailure("Chien search found fewer roots than the locator degree")

    # Forney: Omega = (S(x) * Lambda(x)) mod x^(n-k), lowest degree first.
    omega = [0] * n_par
    for i in range(len(lam)):
        for j in range(n_par - i):
            omega[i + j] ^= gf_mul(lam[i], syndromes[j])
    corrected = list(r)
    for loc in error_pos:
        x = gf_pow(2, code.n - 1 - loc)
        x_inv = gf_div(1, x)
        om = 0
        for j, c in enumerate(omega):
            om ^= gf_mul(c, gf_pow(x_inv, j))
        # Lambda'(x_inv): odd-degree terms only.
        lam_deriv = 0
        for j in range(1, len(lam), 2):
            lam_deriv ^= gf_mul(lam[j], gf_pow(x_inv, j - 1))
        if lam_deriv == 0:
            raise DecodeFailure("Forney derivative vanished")
        magnitude = gf_mul(x, gf_div(om, lam_deriv))
        corrected[loc] ^= magnitude

    # Consistency check: the corrected word must have zero syndromes.
    for i in range(n_par):
        if _poly_eval(corrected, gf_pow(2, i)) != 0:
            raise DecodeFailure("corrected word fails the syndrome check")
    return np.array(corrected[: code.k], dtype=np.uint8), len(error_pos)
