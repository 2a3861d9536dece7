"""Channel and SNR-calibration tests."""
from fractions import Fraction

import numpy as np
import pytest

from wimaxphy.channel import (
    STAGE_CHANNEL,
    STAGE_NOISE,
    STAGE_PAYLOAD,
    SnrSpec,
    awgn,
    mimo_channel,
    rayleigh_gain,
    rng_for,
)


def test_awgn_moments():
    rng = np.random.default_rng(9001)
    x = np.zeros(1_000_000, dtype=complex)
    y = awgn(x, 0.5, rng)
    assert np.mean(np.abs(y) ** 2) == pytest.approx(0.5, rel=0.01)
    assert abs(np.mean(y)) < 0.005
    # real and imaginary parts carry half the variance each
    assert np.var(y.real) == pytest.approx(0.25, rel=0.01)
    assert np.var(y.imag) == pytest.approx(0.25, rel=0.01)


def test_awgn_zero_variance_is_identity():
    rng = np.random.default_rng(9002)
    x = rng.normal(size=100) + 1j * rng.normal(size=100)
    assert np.array_equal(awgn(x, 0.0, rng), x)


def test_rayleigh_gain_statistics():
    rng = np.random.default_rng(9003)
    h = rayleigh_gain(rng, (200_000,))
    assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, rel=0.01)
    assert np.var(h.real) == pytest.approx(0.5, rel=0.02)
    assert np.var(h.imag) == pytest.approx(0.5, rel=0.02)
    assert abs(np.mean(h)) < 0.01


def test_rayleigh_envelope_distribution():
    scipy_stats = pytest.importorskip("scipy.stats")
    rng = np.random.default_rng(9004)
    env = np.abs(rayleigh_gain(rng, (50_000,)))
    # |h| ~ Rayleigh(sigma = 1/sqrt(2)) when E[|h|^2] = 1
    stat, pvalue = scipy_stats.kstest(env, "rayleigh", args=(0, 1 / np.sqrt(2)))
    assert pvalue > 0.01


def test_mimo_channel_shape_and_variance():
    rng = np.random.default_rng(9005)
    h = mimo_channel(2, 2, rng, blocks=50_000)
    assert h.shape == (50_000, 2, 2)
    assert np.mean(np.abs(h) ** 2) == pytest.approx(1.0, rel=0.02)


def test_snr_spec_without_overhead_is_exact():
    # Es/N0 = Eb/N0 * bits_per_symbol * code_rate / nt, checked in exact
    # arithmetic at 0 dB where Eb/N0 = 1.
    spec = SnrSpec(eb_n0_db=0.0, bits_per_symbol=4, code_rate=Fraction(1, 2),
                   n_data=192, nfft=256, cp_length=32, nt=2,
                   include_overhead=False)
    assert spec.es_n0 == pytest.approx(4 * 0.5 / 2)
    assert spec.noise_var == pytest.approx((1 / 2) / spec.es_n0)


def test_snr_spec_overhead_charge():
    base = dict(eb_n0_db=3.0, bits_per_symbol=1, code_rate=Fraction(1),
                n_data=192, nfft=256, cp_length=32, nt=1)
    with_oh = SnrSpec(include_overhead=True, **base)
    without = SnrSpec(include_overhead=False, **base)
    used = (192 / 256) * (256 / (256 + 32))
    assert with_oh.used_fraction == pytest.approx(used)
    assert with_oh.es_n0 == pytest.approx(without.es_n0 * used)


def test_noise_variance_calibration_in_db():
    # Round-trip check: generated noise power matches the target Es/N0
    # within 0.1 dB on a large sample.
    spec = SnrSpec(eb_n0_db=6.0, bits_per_symbol=2, code_rate=Fraction(1, 2),
                   n_data=192, nfft=256, cp_length=32, include_overhead=False)
    rng = np.random.default_rng(9006)
    noise = awgn(np.zeros(500_000, dtype=complex), spec.noise_var, rng)
    measured_db = 10 * np.log10(1.0 / np.mean(np.abs(noise) ** 2))
    target_db = 10 * np.log10(spec.es_n0)
    assert measured_db == pytest.approx(target_db, abs=0.1)


def test_rng_streams_are_keyed_and_reproducible():
    a = rng_for(0, 1, 2, STAGE_NOISE).normal(size=8)
    b = rng_for(0, 1, 2, STAGE_NOISE).normal(size=8)
    assert np.array_equal(a, b)
    for other in (rng_for(0, 1, 2, STAGE_PAYLOAD), rng_for(0, 1, 2, STAGE_CHANNEL),
                  rng_for(0, 1, 3, STAGE_NOISE), rng_for(0, 2, 2, STAGE_NOISE),
                  rng_for(1, 1, 2, STAGE_NOISE)):
        assert not np.array_equal(a, other.normal(size=8))
