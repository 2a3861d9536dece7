"""Spatial multiplexing and MIMO detection (ZF, MMSE, exhaustive ML).

Stream mapping is round-robin with 1/sqrt(nt) power scaling on the
transmit side, so total transmit power is constant across antenna counts
and the detectors stay convention-free.
"""
from __future__ import annotations

import itertools

import numpy as np

from .mapping import Constellation

COND_LIMIT = 1e12
ML_ENUMERATION_LIMIT = 4096


class SingularChannelError(Exception):
    """H too ill-conditioned for linear detection; frame counted as erased."""


def sm_multiplex(symbols: np.ndarray, nt: int) -> np.ndarray:
    """Round-robin split into nt streams, each scaled by 1/sqrt(nt).

    Input (..., L*nt) -> output (..., nt, L); stream a carries symbols
    a, a+nt, a+2nt, ...  nt = 1 is the identity.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape[-1] % nt:
        raise ValueError(f"symbol count {symbols.shape[-1]} not a multiple of nt={nt}")
    streams = symbols.reshape(symbols.shape[:-1] + (-1, nt))
    streams = np.moveaxis(streams, -1, -2)
    return streams if nt == 1 else streams / np.sqrt(nt)


def sm_demultiplex(streams: np.ndarray, nt: int) -> np.ndarray:
    """Inverse of sm_multiplex: (..., nt, L) -> (..., L*nt)."""
    streams = np.asarray(streams, dtype=np.complex128)
    if streams.shape[-2] != nt:
        raise ValueError(f"expected {nt} streams, got {streams.shape[-2]}")
    out = np.moveaxis(streams, -2, -1).reshape(streams.shape[:-2] + (-1,))
    return out if nt == 1 else out * np.sqrt(nt)


def zf_detect(y: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Zero-forcing: pseudo-inverse of H applied to y.

    `y` may be a single receive vector (nr,) or a block (nr, L).
    """
    h = np.asarray(h, dtype=np.complex128)
    if np.linalg.cond(h) > COND_LIMIT:
        raise SingularChannelError(f"channel condition number exceeds {COND_LIMIT:g}")
    return np.linalg.pinv(h) @ np.asarray(y, dtype=np.complex128)


def mmse_detect(y: np.ndarray, h: np.ndarray, noise_var: float) -> np.ndarray:
    """MMSE: (H^H H + noise_var I)^-1 H^H y."""
    if noise_var < 0:
        raise ValueError("noise_var must be >= 0")
    h = np.asarray(h, dtype=np.complex128)
    gram = h.conj().T @ h + noise_var * np.eye(h.shape[1])
    return np.linalg.solve(gram, h.conj().T @ np.asarray(y, dtype=np.complex128))


def ml_detect(y: np.ndarray, h: np.ndarray, c: Constellation) -> np.ndarray:
    """Exhaustive joint ML: labels minimizing ||y - H x||^2.

    Returns integer labels of shape (nt,) or (nt, L).  Candidates are
    enumerated in lexicographic label order, so argmin ties resolve to
    the lowest labels.
    """
    h = np.asarray(h, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    nt = h.shape[1]
    if nt > 2 or c.order**nt > ML_ENUMERATION_LIMIT:
        raise ValueError(f"ML enumeration bound exceeded: {c.order}^{nt}")
    labels = np.array(list(itertools.product(range(c.order), repeat=nt)))
    candidates = c.points[labels].T  # (nt, M^nt)
    ref = h @ candidates  # (nr, M^nt)
    single = y.ndim == 1
    y2 = y[:, None] if single else y
    # distances: (L, M^nt)
    d = np.sum(np.abs(y2[:, :, None] - ref[:, None, :]) ** 2, axis=0)
    best = np.argmin(d, axis=-1)
    out = labels[best].T  # (nt, L)
    return out[:, 0] if single else out


def ergodic_capacity(nt: int, nr: int, snr: float, trials: int,
                     rng: np.random.Generator | None = None,
                     h_fixed: np.ndarray | None = None) -> float:
    """Monte Carlo mean of log2 det(I + (snr/nt) H H^H), snr linear.

    `h_fixed` pins the channel (test hook); otherwise entries are i.i.d.
    unit-variance complex Gaussian.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if h_fixed is not None:
        h = np.broadcast_to(np.asarray(h_fixed, dtype=np.complex128), (trials, nr, nt))
    else:
        if rng is None:
            rng = np.random.default_rng()
        g = rng.normal(0.0, 1.0, (trials, nr, nt, 2))
        h = (g[..., 0] + 1j * g[..., 1]) / np.sqrt(2.0)
    gram = np.eye(nr) + (snr / nt) * (h @ h.conj().transpose(0, 2, 1))
    sign, logdet = np.linalg.slogdet(gram)
    return float(np.mean(logdet) / np.log(2.0))
