"""MIMO detection tests: worked examples, limits, ML oracle, capacity."""
import itertools

import numpy as np
import pytest

from wimaxphy.channel import mimo_channel
from wimaxphy.mapping import constellation
from wimaxphy.mimo import (
    SingularChannelError,
    ergodic_capacity,
    ml_detect,
    mmse_detect,
    sm_demultiplex,
    sm_multiplex,
    zf_detect,
)


def test_multiplex_round_robin_and_power():
    symbols = np.arange(1, 9, dtype=complex)
    streams = sm_multiplex(symbols, 2)
    assert streams.shape == (2, 4)
    # stream a carries symbols a, a+nt, ..., scaled by 1/sqrt(2)
    assert np.allclose(streams[0] * np.sqrt(2), [1, 3, 5, 7])
    assert np.allclose(streams[1] * np.sqrt(2), [2, 4, 6, 8])
    # total transmit power is preserved
    assert np.sum(np.abs(streams) ** 2) == pytest.approx(np.sum(np.abs(symbols) ** 2) / 2)
    assert np.allclose(sm_demultiplex(streams, 2), symbols)


def test_multiplex_identity_for_single_stream():
    symbols = np.arange(4, dtype=complex)
    streams = sm_multiplex(symbols, 1)
    assert streams.shape == (1, 4)
    assert np.allclose(streams[0], symbols)


def test_zf_worked_example():
    # H = [[1, 1], [0, 1]], x = (2, 1): y = (3, 1); ZF recovers x exactly.
    h = np.array([[1.0, 1.0], [0.0, 1.0]])
    x_hat = zf_detect(np.array([3.0, 1.0]), h)
    assert np.allclose(x_hat, [2.0, 1.0])


def test_zf_rejects_singular_channel():
    with pytest.raises(SingularChannelError):
        zf_detect(np.array([1.0, 1.0]), np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_mmse_worked_example():
    # H = I, noise_var = 1: (H^H H + I)^-1 H^H y = y / 2.
    y = np.array([2.0, 2.0])
    assert np.allclose(mmse_detect(y, np.eye(2), 1.0), [1.0, 1.0])


def test_mmse_approaches_zf_at_high_snr():
    rng = np.random.default_rng(10_001)
    h = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    y = rng.normal(size=2) + 1j * rng.normal(size=2)
    assert np.allclose(mmse_detect(y, h, 1e-12), zf_detect(y, h), atol=1e-8)


def test_mmse_rejects_negative_noise():
    with pytest.raises(ValueError):
        mmse_detect(np.zeros(2), np.eye(2), -1.0)


def _ml_oracle(y, h, c):
    best, best_labels = np.inf, None
    for labels in itertools.product(range(c.order), repeat=h.shape[1]):
        x = c.points[list(labels)]
        d = np.sum(np.abs(y - h @ x) ** 2)
        if d < best - 1e-15:
            best, best_labels = d, labels
    return best_labels


@pytest.mark.parametrize("order", [2, 4, 16])
def test_ml_matches_exhaustive_oracle(order):
    rng = np.random.default_rng(10_002)
    c = constellation(order)
    for _ in range(50):
        h = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2)
        labels = rng.integers(0, order, 2)
        y = h @ c.points[labels] + 0.1 * (rng.normal(size=2) + 1j * rng.normal(size=2))
        assert tuple(ml_detect(y, h, c)) == _ml_oracle(y, h, c)


def test_ml_block_input():
    rng = np.random.default_rng(10_003)
    c = constellation(4)
    h = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))) / np.sqrt(2)
    labels = rng.integers(0, 4, (2, 6))
    y = h @ c.points[labels]
    assert np.array_equal(ml_detect(y, h, c), labels)


def test_ml_enumeration_bound():
    with pytest.raises(ValueError):
        ml_detect(np.zeros(2, dtype=complex), np.eye(3), constellation(64))


def test_capacity_fixed_identity_channel():
    # H = I at nt = nr = 2: C = 2 * log2(1 + snr/2); snr = 1 gives 2*log2(1.5).
    c = ergodic_capacity(2, 2, 1.0, trials=10, h_fixed=np.eye(2))
    assert c == pytest.approx(2 * np.log2(1.5), rel=1e-12)
    c1 = ergodic_capacity(1, 1, 1.0, trials=10, h_fixed=np.eye(1))
    assert c1 == pytest.approx(np.log2(2.0), rel=1e-12)


def test_capacity_monotone_in_snr():
    rng = np.random.default_rng(10_004)
    h = mimo_channel(2, 2, rng, blocks=1)[0]
    low = ergodic_capacity(2, 2, 1.0, trials=5, h_fixed=h)
    high = ergodic_capacity(2, 2, 10.0, trials=5, h_fixed=h)
    assert high > low


def test_capacity_argument_validation():
    with pytest.raises(ValueError):
        ergodic_capacity(2, 2, 1.0, trials=0)
