import numpy as np
import pytest

from fecbench import hwscale as hw


def rec(**kw):
    base = dict(
        label="x", family="SC", tech_nm=65.0, area_mm2=1.0, throughput_mbps=1000.0,
        n_block=1024,
    )
    base.update(kw)
    return hw.HwRecord(**base)


def test_identity_technology_scaling():
    r = rec(tech_nm=90.0)
    s = hw.scale_technology(r, 90.0)
    assert s == r


def test_65_to_90_factors():
    s = hw.scale_technology(rec(), 90.0)
    assert s.area_mm2 == pytest.approx(1.9171597633136093, rel=1e-9)
    assert s.throughput_mbps == pytest.approx(722.2222222222222, rel=1e-9)
    assert abs(s.area_mm2 / 1.9172 - 1) < 1e-4
    assert abs(s.throughput_mbps / 722.2 - 1) < 1e-4


def test_28_to_90_area_factor():
    s = hw.scale_technology(rec(tech_nm=28.0), 90.0)
    assert s.area_mm2 == pytest.approx((90.0 / 28.0) ** 2, rel=1e-12)
    assert s.area_mm2 == pytest.approx(10.33, abs=5e-3)


def test_round_trip_recovers_original():
    r = rec(tech_nm=40.0, area_mm2=2.34, throughput_mbps=777.0)
    back = hw.scale_technology(hw.scale_technology(r, 90.0), 40.0)
    assert back.area_mm2 == pytest.approx(r.area_mm2, rel=1e-12)
    assert back.throughput_mbps == pytest.approx(r.throughput_mbps, rel=1e-12)


def test_sc_area_linear_in_n_time_unchanged():
    r = rec(n_block=2048, area_mm2=3.0)
    s = hw.scale_code_params(r, target_n=1024)
    assert s.area_mm2 == pytest.approx(1.5)
    assert s.time_ns_per_bit == pytest.approx(r.time_ns_per_bit)


def test_scl_area_linear_in_list():
    r = rec(family="SCL", list_size=2)
    s = hw.scale_code_params(r, target_l=4)
    assert s.area_mm2 == pytest.approx(2.0)


def test_bp_nlogn_area_rule():
    r = rec(family="BP", n_block=1024, iters=10)
    s = hw.scale_code_params(r, target_n=8192)
    assert s.area_mm2 == pytest.approx((8192 * 13) / (1024 * 10), rel=1e-12)


def test_bp_iteration_rule_scales_time():
    r = rec(family="BP", n_block=1024, iters=10)
    s = hw.scale_code_params(r, target_i=20)
    assert s.time_ns_per_bit == pytest.approx(2.0 * r.time_ns_per_bit, rel=1e-12)


def test_rules_rejected_for_wrong_family():
    with pytest.raises(ValueError):
        hw.scale_code_params(rec(family="LDPC", n_block=672), target_n=1024)
    with pytest.raises(ValueError):
        hw.scale_code_params(rec(family="SC"), target_l=4)
    with pytest.raises(ValueError):
        hw.scale_code_params(rec(family="SC", n_block=1024), target_i=5)


def test_missing_fields_fail_instead_of_defaulting():
    with pytest.raises(ValueError):
        hw.scale_code_params(rec(family="SCL", list_size=None), target_l=4)
    with pytest.raises(ValueError):
        hw.scale_code_params(rec(n_block=None), target_n=1024)


def test_scaling_preserves_label_and_family():
    r = rec(family="SCL", list_size=2, label="alpha")
    s = hw.scale_code_params(hw.scale_technology(r, 90.0), target_n=512, target_l=8)
    assert (s.label, s.family) == ("alpha", "SCL")


def test_scaling_order_commutes():
    r = rec(family="SCL", tech_nm=28.0, area_mm2=0.37, throughput_mbps=820.0,
            n_block=2048, list_size=2)
    a = hw.scale_code_params(hw.scale_technology(r, 90.0), target_n=1024, target_l=4)
    b = hw.scale_technology(hw.scale_code_params(r, target_n=1024, target_l=4), 90.0)
    assert a.area_mm2 == pytest.approx(b.area_mm2, rel=1e-12)
    assert a.throughput_mbps == pytest.approx(b.throughput_mbps, rel=1e-12)
    assert a.efficiency_mm2_per_bps == pytest.approx(b.efficiency_mm2_per_bps, rel=1e-12)


def test_efficiency_unit_arithmetic():
    r = rec(area_mm2=1.0, throughput_mbps=1000.0)  # 1 ns/bit
    pt = hw.efficiency(r)
    assert pt.time_ns_per_bit == pytest.approx(1.0)
    assert pt.efficiency_mm2_per_bps == pytest.approx(1e-9)
    double_area = hw.efficiency(rec(area_mm2=2.0, throughput_mbps=1000.0))
    assert double_area.efficiency_mm2_per_bps == pytest.approx(2e-9)


def test_iso_efficiency_endpoints():
    lines = hw.iso_efficiency_lines(0, 0)
    c, (t0, a0), (t1, a1) = lines[0]
    assert c == 1.0
    assert (t0, a0) == (1e-2, 1e2)
    assert (t1, a1) == (1e2, 1e-2)
    assert t0 * a0 == pytest.approx(c) and t1 * a1 == pytest.approx(c)


def test_iso_lines_slope_minus_one_and_decade_spacing():
    lines = hw.iso_efficiency_lines(-2, 1)
    assert len(lines) == 4
    for c, (t0, a0), (t1, a1) in lines:
        slope = (np.log10(a1) - np.log10(a0)) / (np.log10(t1) - np.log10(t0))
        assert slope == pytest.approx(-1.0)
    ratios = [lines[i + 1][0] / lines[i][0] for i in range(3)]
    assert ratios == [pytest.approx(10.0)] * 3


def test_csv_round_trip(tmp_path):
    from fecbench.recipes import asset_root

    records = hw.read_records_csv(asset_root() / "hwscale/example_decoders.csv")
    assert len(records) == 8
    out = tmp_path / "echo.csv"
    hw.write_records_csv(out, records)
    back = hw.read_records_csv(out)
    for r, b in zip(records, back):
        assert r.label == b.label
        assert r.throughput_mbps == pytest.approx(b.throughput_mbps, rel=1e-12)
        assert r.area_mm2 == pytest.approx(b.area_mm2, rel=1e-12)


def test_csv_requires_exactly_one_rate_field(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "label,family,tech_nm,area_mm2,throughput_mbps,time_ns_per_bit,N,L,I,source\n"
        "z,SC,65,1.0,100,10,1024,,,x\n"
    )
    with pytest.raises(ValueError):
        hw.read_records_csv(path)


def test_record_validation():
    with pytest.raises(ValueError):
        rec(family="RS")
    with pytest.raises(ValueError):
        rec(area_mm2=-1.0)
