import math

import numpy as np
import pytest

from fecbench.montecarlo import (
    Campaign,
    PointResult,
    ebn0_at_fer,
    read_results_csv,
    run_campaign,
    run_point,
    write_results_csv,
)
from fecbench.recipes import UncodedScenario, build_scenarios, load_recipe


def q_function(x):
    return 0.5 * math.erfc(x / math.sqrt(2.0))


@pytest.fixture(scope="module")
def uncoded():
    return UncodedScenario(name="uncoded-ref", block_bits=1000)


def make_campaign(scen, points, **kw):
    defaults = dict(
        scenario=scen, ebn0_points=points, master_seed=7, min_frame_errors=50,
        max_frames=20_000, batch_size=100,
    )
    defaults.update(kw)
    return Campaign(**defaults)


def test_noiseless_mode_caps_frames(uncoded):
    camp = make_campaign(uncoded, (4.0,), noiseless=True, max_frames=50_000)
    res = run_point(camp, 4.0)
    assert res.frames == 1000
    assert res.frame_errors == 0 and res.bit_errors == 0


def test_uncoded_ber_matches_q_function(uncoded):
    """BER of hard-decided BPSK at 4 dB vs the closed-form tail value."""
    camp = make_campaign(uncoded, (4.0,), min_frame_errors=10 ** 9, max_frames=1000)
    res = run_point(camp, 4.0)
    n_bits = res.frames * uncoded.payload_bits
    p = q_function(math.sqrt(2.0 * 10.0 ** 0.4))
    assert p == pytest.approx(1.25e-2, rel=2e-3)
    ber = res.ber(uncoded.payload_bits)
    ci = 1.96 * math.sqrt(p * (1 - p) / n_bits)
    assert abs(ber - p) < ci * 1.5


def test_serial_and_parallel_agree(uncoded):
    camp = make_campaign(uncoded, (2.0,))
    a = run_point(camp, 2.0, workers=1)
    b = run_point(camp, 2.0, workers=2)
    assert (a.frames, a.frame_errors, a.bit_errors) == (b.frames, b.frame_errors, b.bit_errors)


def test_campaign_csv_byte_identical_across_worker_counts(uncoded, tmp_path):
    camp = make_campaign(uncoded, (2.0, 3.0))
    run_campaign(camp, tmp_path / "w1", workers=1)
    run_campaign(camp, tmp_path / "w2", workers=2)
    a = (tmp_path / "w1" / "uncoded-ref.csv").read_bytes()
    b = (tmp_path / "w2" / "uncoded-ref.csv").read_bytes()
    assert a == b


def test_stopping_rule_batch_granularity(uncoded):
    # at 0 dB the uncoded frame error rate is ~1, so the first batch
    # already exceeds the target
    camp = make_campaign(uncoded, (0.0,), min_frame_errors=10, batch_size=100)
    res = run_point(camp, 0.0)
    assert res.frames == 100
    assert res.frame_errors >= 10


def test_resume_skips_completed_points(uncoded, tmp_path):
    camp = make_campaign(uncoded, (2.0,))
    first = run_campaign(camp, tmp_path, workers=1)
    csv_path = tmp_path / "uncoded-ref.csv"
    before = csv_path.read_bytes()
    camp2 = make_campaign(uncoded, (2.0, 3.0))
    second = run_campaign(camp2, tmp_path, workers=1)
    assert (tmp_path / "uncoded-ref.csv").read_bytes() != before  # new point appended
    rows = read_results_csv(csv_path)
    assert len(rows) == 2
    assert [r.frames for r in second][0] == first[0].frames


def test_empty_grid_gives_empty_results(uncoded, tmp_path):
    camp = make_campaign(uncoded, ())
    assert run_campaign(camp, tmp_path) == []


def test_fer_floor_aborts_scan(uncoded, tmp_path):
    camp = make_campaign(uncoded, (6.0, 8.0, 10.0, 11.0), fer_floor=2e-2,
                         min_frame_errors=5, max_frames=2000)
    results = run_campaign(camp, tmp_path)
    assert len(results) == 3  # the 10 dB point lands under the floor


def test_grid_must_increase(uncoded):
    with pytest.raises(ValueError):
        make_campaign(uncoded, (1.0, 1.0))


def test_point_result_rates():
    r = PointResult("s", 1.0, frames=200, frame_errors=20, bit_errors=50)
    assert r.fer == 0.1
    assert r.ber(10) == 0.025


def test_results_csv_round_trip(tmp_path, uncoded):
    res = [PointResult("s", 1.25, 1000, 31, 97)]
    path = tmp_path / "out.csv"
    write_results_csv(path, res, payload_bits=10)
    rows = read_results_csv(path)
    assert rows[0]["scenario"] == "s"
    assert float(rows[0]["ebn0_db"]) == 1.25
    assert int(rows[0]["frames"]) == 1000
    assert float(rows[0]["fer"]) == 0.031


def test_ebn0_at_fer_interpolation():
    pts = [(1.0, 1e-1), (2.0, 1e-3)]
    assert ebn0_at_fer(pts, 1e-2) == pytest.approx(1.5)
    assert ebn0_at_fer(pts, 1e-1) == pytest.approx(1.0)
    assert ebn0_at_fer(pts, 1e-4) is None
    assert ebn0_at_fer([(1.0, 0.5)], 1e-2) is None


def test_ldpc_recipe_point_runs_end_to_end(tmp_path):
    recipe = load_recipe("80211ad-r12-ldpc")
    (scen,) = build_scenarios(recipe)
    camp = Campaign(
        scenario=scen, ebn0_points=(2.5,), master_seed=3,
        min_frame_errors=20, max_frames=5000, batch_size=250,
    )
    res = run_point(camp, 2.5)
    assert 0.01 < res.fer < 0.15  # waterfall band sanity
