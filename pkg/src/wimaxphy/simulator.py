"""End-to-end Monte Carlo engine: frame chain, BER sweeps, SNR gaps, CSV.

One frame carries one OFDM symbol per transmit antenna.  The transmit
chain per frame is scramble -> (optional RS encode) -> convolutional
encode -> puncture -> interleave -> map -> spatial multiplex ->
assemble/IFFT/CP per antenna; receive runs the inverses with the chosen
detector.  Fading is flat per coherence block and applied per subcarrier.

Every random draw comes from a generator keyed by (master seed, SNR
index, trial index, stage), so results are bit-identical regardless of
worker count or scheduling.  The stopping rule advances in fixed-size
rounds of trials so parallel and serial runs accumulate identical counts.
"""
from __future__ import annotations

import concurrent.futures
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import channel as ch
from . import convcode, interleaver, mapping, mimo, ofdm, rs, scrambler
from .config import SimConfig
from .profiles import BurstProfile, FrameSizing, burst_profile, frame_sizing

BATCH_FRAMES = 64  # frames simulated per vectorized batch
ROUND_BATCHES = 8  # batches between stopping-rule checks (fixes parallel grain)


@dataclass(frozen=True)
class ChainSpec:
    """Everything derived from a SimConfig that the frame engine needs."""

    cfg: SimConfig
    profile: BurstProfile
    const: mapping.Constellation
    params: ofdm.OfdmParams
    sizing: FrameSizing | None  # None in uncoded bypass mode
    rs_code: rs.RsCode | None
    seed_state: scrambler.LfsrState

    @property
    def nt(self) -> int:
        return self.cfg.nt

    @property
    def info_bits_per_frame(self) -> int:
        if self.cfg.uncoded:
            return self.nt * self.params.n_data * self.const.bits_per_symbol
        return self.nt * self.sizing.info_bits

    @property
    def code_rate_total(self):
        from fractions import Fraction

        if self.cfg.uncoded:
            return Fraction(1)
        rate = Fraction(self.sizing.info_bits, self.sizing.ncbps)
        return rate

    def snr_spec(self, eb_n0_db: float) -> ch.SnrSpec:
        # snr.overhead=false drops the CP/pilot overhead charge so Eb/N0
        # maps straight to detection SNR (closed-form reference mode).
        return ch.SnrSpec(
            eb_n0_db=eb_n0_db,
            bits_per_symbol=self.const.bits_per_symbol,
            code_rate=self.code_rate_total,
            n_data=self.params.n_data,
            nfft=self.params.nfft,
            cp_length=self.params.cp_length,
            nt=self.nt,
            include_overhead=self.cfg.include_overhead,
        )


def chain_spec(cfg: SimConfig) -> ChainSpec:
    cfg = cfg.validate()
    profile = burst_profile(cfg.profile)
    const = mapping.constellation(profile.order)
    params = ofdm.OfdmParams(nfft=cfg.nfft, cp_ratio=cfg.cp_ratio)
    sizing = None
    rs_code = None
    if not cfg.uncoded:
        sizing = frame_sizing(profile, params.n_data,
                              rs_enabled=cfg.rs_enabled, rs_t=cfg.rs_t)
        if cfg.rs_enabled:
            rs_code = rs.RsCode(sizing.rs_n, sizing.rs_k)
    if cfg.detector == "ml" and const.order**cfg.nt > mimo.ML_ENUMERATION_LIMIT:
        from .config import ConfigError

        raise ConfigError(f"ML enumeration bound exceeded for {cfg.profile} at nt={cfg.nt}")
    return ChainSpec(cfg, profile, const, params, sizing, rs_code,
                     scrambler.LfsrState.from_string(cfg.scrambler_seed))


# ---------------------------------------------------------------------------
# Frame engine
# ---------------------------------------------------------------------------

def _tx_bits_to_symbols(spec: ChainSpec, payload: np.ndarray) -> np.ndarray:
    """Scramble + FEC + interleave + map: (F, K) bits -> (F, nt*n_data) symbols."""
    cfg = spec.cfg
    f = payload.shape[0]
    nt = spec.nt
    scrambled = payload ^ scrambler.prbs_sequence(payload.shape[1], spec.seed_state)
    if cfg.uncoded:
        return mapping.map_bits(scrambled, spec.const).reshape(f, -1)
    sz = spec.sizing
    blocks = scrambled.reshape(f * nt, sz.info_bits)
    if spec.rs_code is not None:
        coded = np.empty((f * nt, sz.conv_input_bits), dtype=np.uint8)
        for i in range(blocks.shape[0]):
            msg = np.packbits(blocks[i])
            cw_bits = np.unpackbits(rs.rs_encode(msg, spec.rs_code))
            coded[i] = np.concatenate([cw_bits, np.zeros(sz.rs_pad_bits, dtype=np.uint8)])
        blocks = coded
    enc = convcode.conv_encode(blocks)
    punct = convcode.puncture(enc, spec.profile.puncture)
    il_params = interleaver.InterleaverParams(sz.ncbps, spec.const.bits_per_symbol)
    inter = interleaver.interleave(punct, il_params)
    symbols = mapping.map_bits(inter, spec.const)  # (F*nt, n_data)
    return symbols.reshape(f, -1)


def _rx_symbols_to_bits(spec: ChainSpec, metrics_or_bits: np.ndarray,
                        as_metrics: bool) -> np.ndarray:
    """Deinterleave + depuncture + Viterbi (+ RS) + descramble: -> (F, K) bits."""
    cfg = spec.cfg
    f = metrics_or_bits.shape[0]
    nt = spec.nt
    if cfg.uncoded:
        bits = metrics_or_bits.astype(np.uint8)
        return bits ^ scrambler.prbs_sequence(bits.shape[1], spec.seed_state)
    sz = spec.sizing
    blocks = metrics_or_bits.reshape(f * nt, sz.ncbps)
    il_params = interleaver.InterleaverParams(sz.ncbps, spec.const.bits_per_symbol)
    metrics = interleaver.deinterleave(
        blocks if as_metrics else convcode.bits_to_metrics(blocks), il_params)
    mother = convcode.depuncture(metrics, spec.profile.puncture)
    decoded = convcode.viterbi_decode(mother)  # (F*nt, conv_input_bits)
    if spec.rs_code is not None:
        out = np.empty((f * nt, sz.info_bits), dtype=np.uint8)
        for i in range(decoded.shape[0]):
            word = np.packbits(decoded[i, : 8 * sz.rs_n])
            try:
                msg, _ = rs.rs_decode(word, spec.rs_code)
            except rs.DecodeFailure:
                msg = word[: sz.rs_k]  # keep the systematic part
            out[i] = np.unpackbits(msg)
        decoded = out
    bits = decoded.reshape(f, -1)
    return bits ^ scrambler.prbs_sequence(bits.shape[1], spec.seed_state)


def _draw_channel(spec: ChainSpec, f: int, gens: list[np.random.Generator]):
    """Per-frame channel realizations.

    Returns (h_bins, h_matrix): for single-antenna runs h_bins is (F, n_data)
    per-bin gains (constant per frame unless coherence == 'sample'); for
    MIMO h_matrix is (F, nr, nt) and h_bins is None.
    """
    cfg = spec.cfg
    n_data = spec.params.n_data
    if cfg.channel == "awgn":
        if spec.nt == 1:
            return np.ones((f, n_data), dtype=np.complex128), None
        eye = np.broadcast_to(np.eye(cfg.nr, cfg.nt, dtype=np.complex128),
                              (f, cfg.nr, cfg.nt)).copy()
        return None, eye
    if spec.nt == 1 and cfg.nr == 1:
        if cfg.coherence == "sample":
            h = np.stack([ch.rayleigh_gain(g, (n_data,)) for g in gens])
        else:
            h = np.stack([np.full(n_data, ch.rayleigh_gain(g)) for g in gens])
        return h, None
    h = np.stack([ch.mimo_channel(cfg.nt, cfg.nr, g) for g in gens])
    return None, h


def _detect(spec: ChainSpec, y: np.ndarray, h: np.ndarray, noise_var: float):
    """Batched MIMO detection.

    y: (F, nr, n_data); h: (F, nr, nt).  Returns (x_hat (F, nt, n_data),
    eff_noise (F, nt, 1), erased (F,) bool).  x_hat estimates the
    transmitted stream symbols (still carrying the 1/sqrt(nt) scaling).
    """
    cfg = spec.cfg
    f, nr, n_data = y.shape
    nt = spec.nt
    nv = max(noise_var, 1e-30)
    erased = np.zeros(f, dtype=bool)
    if cfg.detector == "zf":
        cond = np.linalg.cond(h)
        erased = ~np.isfinite(cond) | (cond > mimo.COND_LIMIT)
        h_safe = h.copy()
        h_safe[erased] = np.broadcast_to(np.eye(nr, nt), (erased.sum(), nr, nt))
        pinv = np.linalg.pinv(h_safe)
        x_hat = pinv @ y
        eff = nv * np.sum(np.abs(pinv) ** 2, axis=2, keepdims=True)
        return x_hat, eff, erased
    if cfg.detector == "mmse":
        # Regularizer sized to the per-stream symbol energy 1/nt; the
        # biased estimate is normalized by the diagonal of W H.
        hh = h.conj().transpose(0, 2, 1)
        gram = hh @ h + (nt * nv) * np.eye(nt)
        w = np.linalg.solve(gram, hh)
        g = w @ h  # (F, nt, nt)
        diag = np.einsum("fii->fi", g)
        x_hat = (w @ y) / diag[:, :, None]
        wnorm = np.sum(np.abs(w) ** 2, axis=2)
        interf = np.sum(np.abs(g) ** 2, axis=2) - np.abs(diag) ** 2
        eff = ((nv * wnorm + interf / nt) / np.abs(diag) ** 2)[:, :, None]
        return x_hat, eff, erased
    # ML: enumerate candidates once; distances per frame.
    import itertools as _it

    labels = np.array(list(_it.product(range(spec.const.order), repeat=nt)))
    cand = (spec.const.points[labels].T / np.sqrt(nt))  # (nt, M^nt)
    x_hat = np.empty((f, nt, n_data), dtype=np.complex128)
    for i in range(f):
        ref = h[i] @ cand  # (nr, M^nt)
        d = np.sum(np.abs(y[i][:, :, None] - ref[:, None, :]) ** 2, axis=0)
        best = np.argmin(d, axis=-1)
        x_hat[i] = cand[:, best]
    eff = np.full((f, nt, 1), nv)  # demapped hard; value is inert
    return x_hat, eff, erased


@dataclass
class FrameBatchResult:
    tx_bits: np.ndarray  # (F, K)
    rx_bits: np.ndarray  # (F, K)
    erased: np.ndarray  # (F,) bool


def run_frame_batch(spec: ChainSpec, snr_index: int, eb_n0_db: float,
                    trial_indices: range) -> FrameBatchResult:
    """Simulate a batch of frames; deterministic in (seed, snr, trial)."""
    cfg = spec.cfg
    f = len(trial_indices)
    seed = cfg.seed
    pay_gens = [ch.rng_for(seed, snr_index, t, ch.STAGE_PAYLOAD) for t in trial_indices]
    chan_gens = [ch.rng_for(seed, snr_index, t, ch.STAGE_CHANNEL) for t in trial_indices]
    noise_gens = [ch.rng_for(seed, snr_index, t, ch.STAGE_NOISE) for t in trial_indices]

    k = spec.info_bits_per_frame
    payload = np.stack([g.integers(0, 2, k).astype(np.uint8) for g in pay_gens])
    symbols = _tx_bits_to_symbols(spec, payload)  # (F, nt*n_data)
    streams = mimo.sm_multiplex(symbols, spec.nt)  # (F, nt, n_data)

    params = spec.params
    freq = ofdm.assemble_symbol(streams, params)
    time = ofdm.add_cp(ofdm.ifft(freq), params.cp_length)
    rx_freq = ofdm.fft(ofdm.remove_cp(time, params.cp_length))
    x_data, _ = ofdm.disassemble_symbol(rx_freq, params)  # (F, nt, n_data)

    noise_var = 0.0 if cfg.noiseless else spec.snr_spec(eb_n0_db).noise_var
    h_bins, h_mat = _draw_channel(spec, f, chan_gens)
    erased = np.zeros(f, dtype=bool)
    mimo_ml = False

    if h_mat is None:
        # Single-antenna path: per-bin complex gain, divide-and-demap.
        x = x_data[:, 0, :]
        y = np.stack([ch.awgn(h_bins[i] * x[i], noise_var, noise_gens[i])
                      for i in range(f)])
        if cfg.csi == "ls_pilot":
            pilots_tx = np.full((f, params.n_pilots), ofdm.PILOT_VALUE)
            h_pil = np.broadcast_to(h_bins[:, :1], (f, params.n_pilots))
            y_pil = np.stack([ch.awgn(h_pil[i] * pilots_tx[i], noise_var, noise_gens[i])
                              for i in range(f)])
            gains = ofdm.ls_channel_estimate(y_pil, pilots_tx, params)
        else:
            gains = h_bins
        symbols_hat = (y / gains)[:, None, :]
        eff_nv = (max(noise_var, 1e-30) / np.abs(gains) ** 2)[:, None, :]
    else:
        y = np.stack([ch.awgn(h_mat[i] @ x_data[i], noise_var, noise_gens[i])
                      for i in range(f)])
        symbols_hat, eff_nv, erased = _detect(spec, y, h_mat, noise_var)
        mimo_ml = cfg.detector == "ml"

    # Undo the transmit power scaling; noise scales with it.
    flat = mimo.sm_demultiplex(symbols_hat, spec.nt)  # (F, nt*n_data)
    nv_per_symbol = np.moveaxis(np.broadcast_to(eff_nv, symbols_hat.shape), 1, 2)
    nv_per_symbol = nv_per_symbol.reshape(f, -1) * spec.nt

    if cfg.uncoded:
        rx_stage = mapping.demap_hard(flat, spec.const)
        as_metrics = False
    elif cfg.metric == "soft" and not mimo_ml:
        rx_stage = mapping.demap_soft(flat, nv_per_symbol, spec.const)
        as_metrics = True
    else:
        # Hard decisions (joint ML yields labels, not LLRs) as +/-1 metrics.
        rx_stage = convcode.bits_to_metrics(mapping.demap_hard(flat, spec.const))
        as_metrics = True
    rx_bits = _rx_symbols_to_bits(spec, rx_stage, as_metrics)
    return FrameBatchResult(payload, rx_bits, erased)


def run_frame(cfg: SimConfig, trial_index: int, eb_n0_db: float | None = None,
              snr_index: int = 0):
    """Single-frame convenience wrapper; returns (tx_bits, rx_bits, erased)."""
    spec = chain_spec(cfg)
    if eb_n0_db is None:
        eb_n0_db = cfg.snr_points()[snr_index]
    res = run_frame_batch(spec, snr_index, eb_n0_db, range(trial_index, trial_index + 1))
    return res.tx_bits[0], res.rx_bits[0], bool(res.erased[0])


# ---------------------------------------------------------------------------
# BER sweep
# ---------------------------------------------------------------------------

@dataclass
class BerPoint:
    eb_n0_db: float
    bits_sent: int
    bit_errors: int
    frames_sent: int
    frame_errors: int

    @property
    def ber(self) -> float:
        return self.bit_errors / self.bits_sent if self.bits_sent else 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames_sent if self.frames_sent else 0.0

    @property
    def ci95_halfwidth(self) -> float:
        if not self.bits_sent:
            return 0.0
        p = self.ber
        return 1.96 * math.sqrt(max(p * (1.0 - p), 0.0) / self.bits_sent)


@dataclass
class BerCurve:
    label: str
    points: list[BerPoint]


def _accumulate(point: BerPoint, res: FrameBatchResult) -> None:
    keep = ~res.erased
    diff = res.tx_bits[keep] ^ res.rx_bits[keep]
    point.bits_sent += int(diff.size)
    point.bit_errors += int(diff.sum())
    point.frames_sent += int(res.tx_bits.shape[0])
    point.frame_errors += int((diff.any(axis=1)).sum()) + int(res.erased.sum())


def run_ber_sweep(cfg: SimConfig, workers: int = 1, label: str | None = None) -> BerCurve:
    """Monte Carlo sweep over the configured SNR grid.

    Stopping is evaluated at fixed round boundaries (ROUND_BATCHES batches
    of BATCH_FRAMES trials), so any worker count produces identical counts.
    """
    spec = chain_spec(cfg)
    points = []
    for snr_index, eb in enumerate(cfg.snr_points()):
        point = BerPoint(eb, 0, 0, 0, 0)
        next_trial = 0
        while point.bit_errors < cfg.min_bit_errors and point.bits_sent < cfg.max_bits:
            ranges = [range(next_trial + b * BATCH_FRAMES, next_trial + (b + 1) * BATCH_FRAMES)
                      for b in range(ROUND_BATCHES)]
            next_trial += ROUND_BATCHES * BATCH_FRAMES
            if workers > 1:
                with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
                    results = list(ex.map(
                        lambda r: run_frame_batch(spec, snr_index, eb, r), ranges))
            else:
                results = [run_frame_batch(spec, snr_index, eb, r) for r in ranges]
            for res in results:  # accumulate in trial-index order
                _accumulate(point, res)
        points.append(point)
    return BerCurve(label or cfg.profile, points)


# ---------------------------------------------------------------------------
# SNR gap and reporting
# ---------------------------------------------------------------------------

class UnbracketedTargetError(ValueError):
    """Target BER not bracketed by a curve; maps to CLI exit code 3."""


def snr_at_ber(curve: BerCurve, target_ber: float) -> float:
    """SNR where the curve crosses target_ber, log10(BER)-interpolated."""
    pts = [(p.eb_n0_db, p.ber) for p in curve.points if p.ber > 0]
    for (x0, b0), (x1, b1) in zip(pts, pts[1:]):
        lo, hi = min(b0, b1), max(b0, b1)
        if lo <= target_ber <= hi and b0 != b1:
            t = (math.log10(target_ber) - math.log10(b0)) / (math.log10(b1) - math.log10(b0))
            return x0 + t * (x1 - x0)
    raise UnbracketedTargetError(
        f"curve {curve.label!r} does not bracket BER {target_ber:g}")


def snr_gain(curve_a: BerCurve, curve_b: BerCurve, target_ber: float) -> float:
    """SNR(curve_a at target) - SNR(curve_b at target), in dB."""
    return snr_at_ber(curve_a, target_ber) - snr_at_ber(curve_b, target_ber)


CSV_HEADER = "eb_n0_db,bits_sent,bit_errors,ber,frames_sent,frame_errors,fer,ci95_halfwidth"


def curve_to_csv(curve: BerCurve) -> str:
    lines = [CSV_HEADER]
    for p in curve.points:
        lines.append(
            f"{p.eb_n0_db:.10g},{p.bits_sent},{p.bit_errors},{p.ber:.10e},"
            f"{p.frames_sent},{p.frame_errors},{p.fer:.10e},{p.ci95_halfwidth:.10e}")
    return "\n".join(lines) + "\n"


def write_curve(curve: BerCurve, path: str | Path, cfg: SimConfig | None = None) -> None:
    """Write the CSV and, when a config is given, its sidecar manifest."""
    path = Path(path)
    path.write_text(curve_to_csv(curve), newline="\n")
    if cfg is not None:
        from .config import manifest_text

        path.with_suffix(path.suffix + ".manifest").write_text(manifest_text(cfg))


def read_curve(path: str | Path, label: str | None = None) -> BerCurve:
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{path}: missing or malformed CSV header")
    points = []
    for line in lines[1:]:
        c = line.split(",")
        points.append(BerPoint(float(c[0]), int(c[1]), int(c[2]), int(c[4]), int(c[5])))
    return BerCurve(label or Path(path).stem, points)
