import numpy as np
import pytest

from fecbench.core import (
    ChannelSpec,
    RngStream,
    as_bits,
    as_llrs,
    awgn_transmit,
    bpsk_modulate,
    hard_decision,
    noiseless_llrs,
)


def test_bpsk_mapping():
    out = bpsk_modulate([0, 1, 0])
    assert np.array_equal(out, [1.0, -1.0, 1.0])


def test_bpsk_all_zero_block():
    assert np.array_equal(bpsk_modulate(np.zeros(64, dtype=np.uint8)), np.ones(64))


def test_bpsk_alternating():
    bits = np.tile([0, 1], 16)
    expect = np.tile([1.0, -1.0], 16)
    assert np.array_equal(bpsk_modulate(bits), expect)


def test_sigma2_half_rate_1db():
    # 1 / (2 * 0.5 * 10^0.1) evaluated directly
    chan = ChannelSpec(ebn0_db=1.0, code_rate=0.5)
    assert chan.sigma2 == pytest.approx(0.7943282347242815, rel=1e-12)
    assert chan.sigma2 == pytest.approx(0.79433, abs=5e-6)


def test_sigma2_positive_and_rate_validated():
    with pytest.raises(ValueError):
        ChannelSpec(1.0, 0.0)
    with pytest.raises(ValueError):
        ChannelSpec(1.0, 1.5)


def test_awgn_noise_statistics():
    # mean within 4 sigma/sqrt(n) of 0, variance within 1% of sigma2
    chan = ChannelSpec(2.0, 0.5)
    n = 1_000_000
    llr = awgn_transmit(np.ones(n), chan, RngStream(99, 0))
    y = llr * chan.sigma2 / 2.0
    noise = y - 1.0
    assert abs(noise.mean()) < 4.0 * np.sqrt(chan.sigma2 / n)
    assert abs(noise.var() / chan.sigma2 - 1.0) < 0.01


def test_awgn_llr_scaling_noiseless_limit():
    # tiny sigma2: LLR signs reproduce the bits with huge magnitudes
    chan = ChannelSpec(50.0, 1.0)
    bits = np.array([0, 1, 0, 1, 1], dtype=np.uint8)
    llr = awgn_transmit(bpsk_modulate(bits), chan, RngStream(1, 2))
    assert np.array_equal(hard_decision(llr), bits)
    assert np.abs(llr).min() > 1e3


def test_rng_stream_replay_and_independence():
    a = RngStream(7, 3).generator().normal(size=32)
    b = RngStream(7, 3).generator().normal(size=32)
    c = RngStream(7, 4).generator().normal(size=32)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_hard_decision_signs_and_tie():
    assert np.array_equal(hard_decision([3.2, -0.1]), [0, 1])
    assert np.array_equal(hard_decision([0.0]), [0])


def test_hard_decision_roundtrip_noiseless():
    bits = np.random.default_rng(0).integers(0, 2, 200).astype(np.uint8)
    assert np.array_equal(hard_decision(noiseless_llrs(bits)), bits)


def test_as_bits_rejects_non_binary():
    with pytest.raises(ValueError):
        as_bits([0, 2, 1])
    with pytest.raises(ValueError):
        as_bits([])


def test_as_llrs_rejects_nan():
    with pytest.raises(ValueError):
        as_llrs([1.0, float("nan")])
