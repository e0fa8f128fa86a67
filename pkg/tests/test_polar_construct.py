import numpy as np
import pytest

from fecbench.polar import construct_monte_carlo, load_frozen_mask, save_frozen_mask


def bec_reliability_order(n, erasure=0.5):
    """Oracle: density evolution on the erasure channel, natural order.

    The first half of the input bits sees the degraded check combination
    (z' = 2z - z^2), the second half the improved sum combination
    (z' = z^2); each half then polarizes recursively. A standard proxy
    for the AWGN reliability ranking at small N.
    """
    if n == 0:
        return np.array([erasure])
    worse = 2 * erasure - erasure * erasure
    better = erasure * erasure
    return np.concatenate(
        [bec_reliability_order(n - 1, worse), bec_reliability_order(n - 1, better)]
    )


def test_n4_frozen_set_matches_bec_oracle():
    z = bec_reliability_order(2)
    worst_two = set(np.argsort(-z, kind="stable")[:2].tolist())
    assert worst_two == {0, 1}
    mask = construct_monte_carlo(n=2, k_total=2, design_snr_db=1.0, trials=20_000, seed=9)
    assert set(np.flatnonzero(mask == 1).tolist()) == {0, 1}


def test_k_equals_n_unfreezes_everything():
    mask = construct_monte_carlo(n=3, k_total=8, design_snr_db=0.0, trials=100, seed=1)
    assert mask.sum() == 0


def test_determinism():
    a = construct_monte_carlo(n=6, k_total=32, design_snr_db=1.0, trials=5_000, seed=4)
    b = construct_monte_carlo(n=6, k_total=32, design_snr_db=1.0, trials=5_000, seed=4)
    assert np.array_equal(a, b)


def test_nested_frozen_sets():
    # same SNR: the k+1 unfrozen set must contain the k unfrozen set
    kwargs = dict(n=6, design_snr_db=1.0, trials=5_000, seed=4)
    m_k = construct_monte_carlo(k_total=24, **kwargs)
    m_k1 = construct_monte_carlo(k_total=25, **kwargs)
    unfrozen_k = set(np.flatnonzero(m_k == 0).tolist())
    unfrozen_k1 = set(np.flatnonzero(m_k1 == 0).tolist())
    assert unfrozen_k < unfrozen_k1


def test_rejects_oversized_k():
    with pytest.raises(ValueError):
        construct_monte_carlo(n=3, k_total=9, design_snr_db=0.0, trials=100, seed=1)


def test_agrees_with_bec_ranking_at_n16():
    # coarse check: at least 7 of the 8 best BEC channels unfrozen
    z = bec_reliability_order(4)
    best8 = set(np.argsort(z, kind="stable")[:8].tolist())
    mask = construct_monte_carlo(n=4, k_total=8, design_snr_db=2.0, trials=50_000, seed=2)
    unfrozen = set(np.flatnonzero(mask == 0).tolist())
    assert len(best8 & unfrozen) >= 7


def test_mask_file_round_trip(tmp_path):
    mask = construct_monte_carlo(n=5, k_total=16, design_snr_db=1.5, trials=2_000, seed=3)
    path = tmp_path / "mask.txt"
    save_frozen_mask(path, mask, 1.5)
    text = path.read_text().splitlines()
    assert text[0] == "32 16 1.5"
    assert len(text[1]) == 32
    loaded, snr = load_frozen_mask(path)
    assert np.array_equal(loaded, mask)
    assert snr == 1.5


def test_mask_file_rejects_corruption(tmp_path):
    path = tmp_path / "mask.txt"
    path.write_text("8 4 1.0\n0101\n")
    with pytest.raises(ValueError):
        load_frozen_mask(path)
