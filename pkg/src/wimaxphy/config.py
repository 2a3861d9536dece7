"""Experiment configuration: defaults, flat key=value files, manifests.

Config files are flat `key=value` text with `#` comments.  The resolved
configuration (every key with its final value) is echoed into the run
manifest, which is itself a valid config file, so a run can be reproduced
byte-for-byte from its manifest.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import scrambler
from .profiles import PROFILES


class ConfigError(ValueError):
    """Invalid configuration; maps to CLI exit code 2."""


def _parse_bool(v: str) -> bool:
    if v.lower() in ("true", "1", "yes"):
        return True
    if v.lower() in ("false", "0", "no"):
        return False
    raise ConfigError(f"expected a boolean, got {v!r}")


def _parse_fraction(v: str) -> Fraction:
    try:
        return Fraction(v)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"expected a fraction like 1/8, got {v!r}") from None


@dataclass(frozen=True)
class SimConfig:
    profile: str = "qpsk-1/2"
    channel: str = "awgn"  # awgn | rayleigh
    coherence: str = "symbol"  # symbol | frame | sample
    noiseless: bool = False
    snr_start: float = 0.0
    snr_stop: float = 10.0
    snr_step: float = 2.0
    nt: int = 1
    nr: int = 1
    detector: str = "zf"  # zf | mmse | ml
    metric: str = "soft"  # hard | soft
    rs_enabled: bool = False
    rs_t: int = 8
    nfft: int = 256
    cp_ratio: Fraction = Fraction(1, 8)
    csi: str = "perfect"  # perfect | ls_pilot
    scrambler_seed: str = scrambler.DEFAULT_SEED
    uncoded: bool = False
    include_overhead: bool = True  # charge CP/pilot overhead in Eb/N0 -> Es/N0
    min_bit_errors: int = 100
    max_bits: int = 10_000_000
    seed: int = 0

    def validate(self) -> "SimConfig":
        if self.profile not in PROFILES:
            raise ConfigError(f"unknown profile {self.profile!r}")
        if self.channel not in ("awgn", "rayleigh"):
            raise ConfigError(f"channel must be awgn or rayleigh, got {self.channel!r}")
        if self.coherence not in ("symbol", "frame", "sample"):
            raise ConfigError(f"coherence must be symbol, frame or sample, got {self.coherence!r}")
        if self.coherence == "sample" and self.nt > 1:
            raise ConfigError("per-sample fading is only defined for single-antenna runs")
        if self.detector not in ("zf", "mmse", "ml"):
            raise ConfigError(f"detector must be zf, mmse or ml, got {self.detector!r}")
        if self.metric not in ("hard", "soft"):
            raise ConfigError(f"metric must be hard or soft, got {self.metric!r}")
        if self.csi not in ("perfect", "ls_pilot"):
            raise ConfigError(f"csi must be perfect or ls_pilot, got {self.csi!r}")
        if self.csi == "ls_pilot" and (self.nt > 1 or self.coherence == "sample"):
            raise ConfigError("ls_pilot estimation requires a single antenna and block fading")
        if self.nt < 1 or self.nr < self.nt:
            raise ConfigError(f"need nr >= nt >= 1, got nt={self.nt}, nr={self.nr}")
        if self.snr_step <= 0:
            raise ConfigError("snr.step must be > 0")
        if self.snr_stop < self.snr_start:
            raise ConfigError("snr.stop must be >= snr.start")
        if self.min_bit_errors < 1:
            raise ConfigError("stop.min_bit_errors must be >= 1")
        if self.max_bits < 1:
            raise ConfigError("stop.max_bits must be >= 1")
        if self.nfft < 4 or self.nfft & (self.nfft - 1):
            raise ConfigError(f"ofdm.nfft must be a power of two, got {self.nfft}")
        try:
            scrambler.LfsrState.from_string(self.scrambler_seed)
        except ValueError as e:
            raise ConfigError(str(e)) from None
        return self

    def snr_points(self) -> list[float]:
        points = []
        v = self.snr_start
        while v <= self.snr_stop + 1e-9:
            points.append(round(v, 10))
            v += self.snr_step
        return points


# config-file key -> (field name, parser)
_KEYS = {
    "profile": ("profile", str),
    "channel.type": ("channel", str),
    "channel.coherence": ("coherence", str),
    "channel.noiseless": ("noiseless", _parse_bool),
    "snr.start": ("snr_start", float),
    "snr.stop": ("snr_stop", float),
    "snr.step": ("snr_step", float),
    "mimo.nt": ("nt", int),
    "mimo.nr": ("nr", int),
    "mimo.detector": ("detector", str),
    "fec.metric": ("metric", str),
    "fec.rs_enabled": ("rs_enabled", _parse_bool),
    "fec.rs_t": ("rs_t", int),
    "fec.uncoded": ("uncoded", _parse_bool),
    "snr.overhead": ("include_overhead", _parse_bool),
    "ofdm.nfft": ("nfft", int),
    "ofdm.cp_ratio": ("cp_ratio", _parse_fraction),
    "ofdm.csi": ("csi", str),
    "scrambler.seed": ("scrambler_seed", str),
    "stop.min_bit_errors": ("min_bit_errors", int),
    "stop.max_bits": ("max_bits", int),
    "seed": ("seed", int),
}
_FIELD_TO_KEY = {f: k for k, (f, _) in _KEYS.items()}


def parse_config_text(text: str, base: SimConfig | None = None) -> SimConfig:
    """Parse flat key=value lines (comments with #) onto `base`."""
    cfg = base or SimConfig()
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key == "fec.rate":
            # The profile binds the code rate; accept the key but demand
            # consistency so stale files fail loudly.
            overrides.setdefault("_fec_rate", value)
            continue
        if key not in _KEYS:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        fname, parser = _KEYS[key]
        overrides[fname] = parser(value)
    rate = overrides.pop("_fec_rate", None)
    cfg = replace(cfg, **overrides)
    if rate is not None:
        prof = overrides.get("profile", cfg.profile)
        if prof in PROFILES and _parse_fraction(rate) != PROFILES[prof][1]:
            raise ConfigError(f"fec.rate {rate} conflicts with profile {prof}")
    return cfg.validate()


def load_config(path: str | Path, base: SimConfig | None = None) -> SimConfig:
    return parse_config_text(Path(path).read_text(), base)


def manifest_text(cfg: SimConfig) -> str:
    """Serialize the fully resolved config as a loadable key=value file."""
    from .profiles import PROFILES as _P

    lines = ["# run manifest: fully resolved configuration"]
    for key, (fname, _) in _KEYS.items():
        value = getattr(cfg, fname)
        if isinstance(value, bool):
            value = "true" if value else "false"
        lines.append(f"{key}={value}")
    lines.append(f"fec.rate={_P[cfg.profile][1]}")
    return "\n".join(lines) + "\n"
