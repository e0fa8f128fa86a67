import itertools

import numpy as np
import pytest

from fecbench.core import ChannelSpec, RngStream, awgn_transmit, bpsk_modulate, noiseless_llrs
from fecbench.polar import (
    ScDecoder,
    SclConfig,
    SclDecoder,
    make_code,
    polar_encode,
    scl_decode,
)


@pytest.fixture(scope="module")
def code64():
    return make_code(n=6, k_payload=32, design_snr_db=1.0, trials=5000, seed=5)


def test_list_one_matches_sc_bit_exactly(code64):
    sc = ScDecoder(code64)
    scl = SclDecoder(code64, SclConfig(list_size=1, crc_enabled=False))
    chan = ChannelSpec(1.0, code64.rate)
    rng = np.random.default_rng(11)
    for f in range(4000):
        payload = rng.integers(0, 2, 32).astype(np.uint8)
        x = polar_encode(code64, payload)
        llr = awgn_transmit(bpsk_modulate(x), chan, RngStream(123, f))
        a, _ = sc.decode(llr)
        b, _ = scl.decode(llr)
        assert np.array_equal(a, b)


def test_genie_path_metric_zero_on_noiseless(code64):
    scl = SclDecoder(code64, SclConfig(list_size=4, crc_enabled=False))
    rng = np.random.default_rng(12)
    payload = rng.integers(0, 2, 32).astype(np.uint8)
    x = polar_encode(code64, payload)
    out, _ = scl.decode(noiseless_llrs(x))
    assert np.array_equal(out, payload)
    assert scl.last_metrics()[0] == 0.0


def test_full_list_equals_exhaustive_ml():
    code = make_code(n=3, k_payload=4, design_snr_db=2.0, trials=5000, seed=5)
    msgs = np.array(list(itertools.product([0, 1], repeat=4)), dtype=np.uint8)
    codewords = np.array([polar_encode(code, m) for m in msgs])
    symbols = 1.0 - 2.0 * codewords.astype(float)
    scl = SclDecoder(code, SclConfig(list_size=16, crc_enabled=False))
    chan = ChannelSpec(1.0, code.rate)
    rng = np.random.default_rng(13)
    for f in range(1500):
        idx = int(rng.integers(0, 16))
        llr = awgn_transmit(bpsk_modulate(codewords[idx]), chan, RngStream(321, f))
        out, _ = scl.decode(llr)
        ml = msgs[int(np.argmax(symbols @ llr))]
        assert np.array_equal(out, ml)


def test_ml_dominance_of_final_metric():
    """The winning path metric never exceeds the metric of any codeword,
    where a codeword's metric sums |LLR| over sign disagreements."""
    code = make_code(n=4, k_payload=6, design_snr_db=2.0, trials=5000, seed=5)
    msgs = np.array(list(itertools.product([0, 1], repeat=6)), dtype=np.uint8)
    codewords = np.array([polar_encode(code, m) for m in msgs])
    scl = SclDecoder(code, SclConfig(list_size=64, crc_enabled=False))
    chan = ChannelSpec(0.0, code.rate)
    rng = np.random.default_rng(14)
    for f in range(300):
        idx = int(rng.integers(0, 64))
        llr = awgn_transmit(bpsk_modulate(codewords[idx]), chan, RngStream(654, f))
        scl.decode(llr)
        best = scl.last_metrics()[0]
        cw_metrics = np.where(codewords == 1, np.maximum(llr, 0), np.maximum(-llr, 0)).sum(axis=1)
        assert best <= cw_metrics.min() + 1e-9


def test_crc_selection_beats_plain_best_metric():
    code = make_code(n=7, k_payload=56, design_snr_db=1.0, crc=True, trials=5000, seed=5)
    with_crc = SclDecoder(code, SclConfig(list_size=8, crc_enabled=True))
    no_crc = SclDecoder(code, SclConfig(list_size=8, crc_enabled=False))
    chan = ChannelSpec(1.5, code.rate)
    rng = np.random.default_rng(15)
    frames = 1500
    err_crc = err_plain = 0
    for f in range(frames):
        payload = rng.integers(0, 2, 56).astype(np.uint8)
        x = polar_encode(code, payload)
        llr = awgn_transmit(bpsk_modulate(x), chan, RngStream(987, f))
        a, _ = with_crc.decode(llr)
        b, _ = no_crc.decode(llr)
        err_crc += not np.array_equal(a, payload)
        err_plain += not np.array_equal(b, payload)
    assert err_crc < err_plain


def test_crc_failure_flag():
    code = make_code(n=5, k_payload=8, design_snr_db=1.0, crc=True, trials=2000, seed=5)
    scl = SclDecoder(code, SclConfig(list_size=2, crc_enabled=True))
    rng = np.random.default_rng(16)
    payload = rng.integers(0, 2, 8).astype(np.uint8)
    x = polar_encode(code, payload)
    out, ok = scl.decode(noiseless_llrs(x))
    assert ok and np.array_equal(out, payload)
    # garbage input: no list path should pass the CRC (flag False), and
    # the fallback is still the lowest-metric path
    junk = noiseless_llrs(rng.integers(0, 2, code.N).astype(np.uint8))
    out, ok = scl.decode(junk)
    assert out.size == 8
    assert isinstance(ok, bool)


def test_requires_crc_code_for_crc_mode(code64):
    with pytest.raises(ValueError):
        SclDecoder(code64, SclConfig(list_size=2, crc_enabled=True))


def test_length_mismatch(code64):
    with pytest.raises(ValueError):
        scl_decode(code64, SclConfig(list_size=2, crc_enabled=False), np.zeros(8))
