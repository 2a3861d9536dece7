"""Convolutional code tests: encoder oracle, puncturing, Viterbi vs ML."""
import itertools

import numpy as np
import pytest

from wimaxphy.convcode import (
    PUNCTURE_BY_RATE,
    RATE_1_2,
    RATE_2_3,
    RATE_3_4,
    ConvCode,
    bits_to_metrics,
    conv_encode,
    depuncture,
    puncture,
    viterbi_decode,
)

# Impulse response of the (171, 133) octal generators, frozen from an
# independent shift-register walk (re-derived by _reference_encode below).
IMPULSE_RESPONSE = [1, 1, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1, 1, 1]


def _reference_encode(bits) -> list:
    """Independent bit-at-a-time encoder with zero-tail termination."""
    g0 = [(0o171 >> (6 - i)) & 1 for i in range(7)]
    g1 = [(0o133 >> (6 - i)) & 1 for i in range(7)]
    state = [0] * 7
    out = []
    for b in list(bits) + [0] * 6:
        state = [int(b)] + state[:6]
        out.append(sum(s * t for s, t in zip(state, g0)) % 2)
        out.append(sum(s * t for s, t in zip(state, g1)) % 2)
    return out


def test_impulse_response_golden():
    imp = np.zeros(1, dtype=np.uint8)
    imp[0] = 1
    coded = conv_encode(imp)
    assert coded.tolist() == IMPULSE_RESPONSE
    assert _reference_encode([1]) == IMPULSE_RESPONSE


def test_output_length_includes_tail():
    for length in (1, 5, 90, 858):
        coded = conv_encode(np.zeros(length, dtype=np.uint8))
        assert coded.shape == (2 * (length + 6),)


def test_encoder_matches_reference():
    rng = np.random.default_rng(3001)
    for length in (1, 7, 40, 200):
        bits = rng.integers(0, 2, length).astype(np.uint8)
        assert conv_encode(bits).tolist() == _reference_encode(bits)


def test_encoder_is_linear():
    rng = np.random.default_rng(3002)
    a = rng.integers(0, 2, 64).astype(np.uint8)
    b = rng.integers(0, 2, 64).astype(np.uint8)
    assert np.array_equal(conv_encode(a ^ b), conv_encode(a) ^ conv_encode(b))


def test_encoder_batch_matches_rows():
    rng = np.random.default_rng(3003)
    batch = rng.integers(0, 2, (5, 30)).astype(np.uint8)
    coded = conv_encode(batch)
    assert coded.shape == (5, 72)
    for row_in, row_out in zip(batch, coded):
        assert np.array_equal(conv_encode(row_in), row_out)


def test_generator_validation():
    with pytest.raises(ValueError):
        ConvCode(7, 0o170, 0o133)  # last tap of G0 unset


def test_puncture_patterns():
    mother = np.arange(12, dtype=np.float64)  # [x1 y1 x2 y2 x3 y3 ...]
    assert puncture(mother, RATE_1_2).tolist() == mother.tolist()
    # rate 2/3 keeps x1 y1 y2 from each 4-bit period
    assert puncture(mother[:4], RATE_2_3).tolist() == [0, 1, 3]
    # rate 3/4 keeps x1 y1 y2 x3 from each 6-bit period
    assert puncture(mother[:6], RATE_3_4).tolist() == [0, 1, 3, 4]


def test_depuncture_inserts_neutral_metrics():
    metrics = np.array([4.0, -2.0, 1.5, 3.0])
    full = depuncture(metrics, RATE_3_4)
    assert full.tolist() == [4.0, -2.0, 0.0, 1.5, 3.0, 0.0]
    # roundtrip on the kept positions
    assert np.array_equal(puncture(full, RATE_3_4), metrics)


def test_puncture_sizing_errors():
    with pytest.raises(ValueError):
        puncture(np.zeros(5), RATE_2_3)  # not a whole number of periods
    with pytest.raises(ValueError):
        depuncture(np.zeros(5), RATE_3_4)  # kept count per period is 4


def test_pattern_rate_consistency_enforced():
    from fractions import Fraction

    from wimaxphy.convcode import PuncturePattern

    with pytest.raises(ValueError):
        PuncturePattern(2, (1, 1, 1, 1), Fraction(2, 3))


@pytest.mark.parametrize("rate", list(PUNCTURE_BY_RATE))
def test_noiseless_roundtrip(rate):
    rng = np.random.default_rng(3010)
    pattern = PUNCTURE_BY_RATE[rate]
    length = 6 * 166  # divisible by every pattern period after encoding
    bits = rng.integers(0, 2, length).astype(np.uint8)
    sent = puncture(conv_encode(bits), pattern)
    decoded = viterbi_decode(depuncture(bits_to_metrics(sent), pattern))[:length]
    assert np.array_equal(decoded, bits)


def test_single_metric_flip_corrected():
    rng = np.random.default_rng(3011)
    bits = rng.integers(0, 2, 100).astype(np.uint8)
    metrics = bits_to_metrics(conv_encode(bits))
    for pos in (0, 57, metrics.size - 1):
        corrupted = metrics.copy()
        corrupted[pos] = -corrupted[pos]
        assert np.array_equal(viterbi_decode(corrupted)[:100], bits)


def exhaustive_codebook(pattern, k: int) -> np.ndarray:
    """Sign matrix (+1/-1) of every punctured codeword of k info bits."""
    messages = np.array(list(itertools.product((0, 1), repeat=k)), dtype=np.uint8)
    codewords = puncture(conv_encode(messages), pattern)
    return 1.0 - 2.0 * codewords


def block_length_for(pattern, k_max: int = 12) -> int:
    """Largest k <= k_max whose mother code is a whole number of periods."""
    k = k_max
    while (2 * (k + 6)) % (2 * pattern.period):
        k -= 1
    return k


@pytest.mark.parametrize("rate", list(PUNCTURE_BY_RATE))
def test_viterbi_equals_exhaustive_ml(rate):
    # With soft metrics, the survivor must attain the globally maximal
    # correlation; ties between distinct codewords count as agreement.
    pattern = PUNCTURE_BY_RATE[rate]
    k = block_length_for(pattern)
    signs = exhaustive_codebook(pattern, k)
    rng = np.random.default_rng(3100 + pattern.period)
    for _ in range(200):
        msg = rng.integers(0, 2, k).astype(np.uint8)
        clean = bits_to_metrics(puncture(conv_encode(msg), pattern))
        noisy = clean + rng.normal(0.0, 1.0, clean.size)
        decoded = viterbi_decode(depuncture(noisy, pattern))[:k]
        coded = puncture(conv_encode(decoded), pattern)
        achieved = float(np.dot(noisy, 1.0 - 2.0 * coded))
        oracle_best = float(np.max(signs @ noisy))
        assert achieved == pytest.approx(oracle_best, abs=1e-9)
