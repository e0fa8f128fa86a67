"""Normalization of published decoder implementation metrics.

Records carry silicon area and throughput (or its reciprocal, time per
decoded bit) at some CMOS node. Scaling rules:

* technology: area ~ s^2, operating frequency ~ 1/s (so throughput ~ 1/s);
* blocklength: SC/SCL area linear in N, BP area ~ N log N;
* list size: SCL area linear in L;
* iterations: BP time per bit linear in I.

Code-parameter rules deliberately leave frequency untouched; only the
technology rule rescales it. Hardware efficiency is area per decoded bit
per second (mm^2 / (bit/s)); on log-log area-vs-time axes it is constant
along slope -1 lines.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, replace
from pathlib import Path

FAMILIES = ("SC", "SCL", "BP", "LDPC", "Turbo")

INPUT_FIELDS = (
    "label",
    "family",
    "tech_nm",
    "area_mm2",
    "throughput_mbps",
    "time_ns_per_bit",
    "N",
    "L",
    "I",
    "source",
)
OUTPUT_FIELDS = INPUT_FIELDS + ("efficiency_mm2_per_bps",)


@dataclass(frozen=True)
class HwRecord:
    label: str
    family: str
    tech_nm: float
    area_mm2: float
    throughput_mbps: float
    n_block: int | None = None
    list_size: int | None = None
    iters: int | None = None
    source: str = ""

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.tech_nm <= 0 or self.area_mm2 <= 0 or self.throughput_mbps <= 0:
            raise ValueError(f"{self.label}: node, area and throughput must be positive")

    @property
    def time_ns_per_bit(self) -> float:
        return 1000.0 / self.throughput_mbps

    @property
    def efficiency_mm2_per_bps(self) -> float:
        return self.area_mm2 * self.time_ns_per_bit * 1e-9


@dataclass(frozen=True)
class ScaledPoint:
    label: str
    family: str
    time_ns_per_bit: float
    area_mm2: float
    efficiency_mm2_per_bps: float


def scale_technology(rec: HwRecord, target_nm: float = 90.0) -> HwRecord:
    """Dennard rules: area x (t/s)^2, throughput x (s/t)."""
    if target_nm <= 0:
        raise ValueError("target node must be positive")
    r = target_nm / rec.tech_nm
    return replace(
        rec,
        tech_nm=target_nm,
        area_mm2=rec.area_mm2 * r * r,
        throughput_mbps=rec.throughput_mbps / r,
    )


def applicable_code_rules(family: str) -> set[str]:
    return {
        "SC": {"N"},
        "SCL": {"N", "L"},
        "BP": {"N", "I"},
        "LDPC": set(),
        "Turbo": set(),
    }[family]


def scale_code_params(
    rec: HwRecord,
    target_n: int | None = None,
    target_l: int | None = None,
    target_i: int | None = None,
) -> HwRecord:
    """Apply the blocklength / list / iteration rules valid for the
    record's family; requesting an inapplicable rule raises."""
    rules = applicable_code_rules(rec.family)
    area = rec.area_mm2
    tput = rec.throughput_mbps
    n = rec.n_block
    lsz = rec.list_size
    itr = rec.iters
    if target_n is not None:
        if "N" not in rules:
            raise ValueError(f"{rec.label}: blocklength rule not defined for {rec.family}")
        if rec.n_block is None:
            raise ValueError(f"{rec.label}: record has no N to scale from")
        if target_n < 1:
            raise ValueError("target N must be positive")
        if rec.family == "BP":
            area *= (target_n * math.log2(target_n)) / (rec.n_block * math.log2(rec.n_block))
        else:
            area *= target_n / rec.n_block
        n = target_n
    if target_l is not None:
        if "L" not in rules:
            raise ValueError(f"{rec.label}: list rule not defined for {rec.family}")
        if rec.list_size is None:
            raise ValueError(f"{rec.label}: record has no L to scale from")
        if target_l < 1:
            raise ValueError("target L must be positive")
        area *= target_l / rec.list_size
        lsz = target_l
    if target_i is not None:
        if "I" not in rules:
            raise ValueError(f"{rec.label}: iteration rule not defined for {rec.family}")
        if rec.iters is None:
            raise ValueError(f"{rec.label}: record has no I to scale from")
        if target_i < 1:
            raise ValueError("target I must be positive")
        # latency per bit grows with the iteration budget
        tput *= rec.iters / target_i
        itr = target_i
    return replace(
        rec, area_mm2=area, throughput_mbps=tput, n_block=n, list_size=lsz, iters=itr
    )


def efficiency(rec: HwRecord) -> ScaledPoint:
    return ScaledPoint(
        label=rec.label,
        family=rec.family,
        time_ns_per_bit=rec.time_ns_per_bit,
        area_mm2=rec.area_mm2,
        efficiency_mm2_per_bps=rec.efficiency_mm2_per_bps,
    )


def iso_efficiency_lines(decade_lo: int, decade_hi: int):
    """Slope -1 segments on log-log (ns/bit, mm^2) axes.

    One segment per integer decade c = 10^e, drawn between time 1e-2 and
    1e2 ns/bit; the area-time product along a segment equals c.
    """
    if decade_hi < decade_lo:
        raise ValueError("decade range is empty")
    lines = []
    for e in range(decade_lo, decade_hi + 1):
        c = 10.0 ** e
        lines.append((c, (1e-2, c * 1e2), (1e2, c * 1e-2)))
    return lines


def _parse_opt_int(tok: str):
    tok = tok.strip()
    return int(tok) if tok else None


def read_records_csv(path) -> list[HwRecord]:
    """Input schema: exactly one of throughput_mbps / time_ns_per_bit per
    row; the other cell stays empty and is derived."""
    records = []
    with open(path, newline="") as fh:
        rd = csv.DictReader(fh)
        missing = set(INPUT_FIELDS) - set(rd.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        for row in rd:
            tput = row["throughput_mbps"].strip()
            tpb = row["time_ns_per_bit"].strip()
            if bool(tput) == bool(tpb):
                raise ValueError(
                    f"{path}: {row['label']}: give exactly one of throughput_mbps "
                    "and time_ns_per_bit"
                )
            throughput = float(tput) if tput else 1000.0 / float(tpb)
            records.append(
                HwRecord(
                    label=row["label"],
                    family=row["family"],
                    tech_nm=float(row["tech_nm"]),
                    area_mm2=float(row["area_mm2"]),
                    throughput_mbps=throughput,
                    n_block=_parse_opt_int(row["N"]),
                    list_size=_parse_opt_int(row["L"]),
                    iters=_parse_opt_int(row["I"]),
                    source=row["source"],
                )
            )
    return records


def write_records_csv(path, records: list[HwRecord]) -> None:
    """Full schema plus the efficiency column, so scaled output can be
    re-ingested (making repeated normalization a no-op)."""
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=OUTPUT_FIELDS)
        w.writeheader()
        for r in records:
            w.writerow(
                {
                    "label": r.label,
                    "family": r.family,
                    "tech_nm": repr(r.tech_nm),
                    "area_mm2": repr(r.area_mm2),
                    "throughput_mbps": repr(r.throughput_mbps),
                    "time_ns_per_bit": "",
                    "N": "" if r.n_block is None else r.n_block,
                    "L": "" if r.list_size is None else r.list_size,
                    "I": "" if r.iters is None else r.iters,
                    "source": r.source,
                    "efficiency_mm2_per_bps": repr(r.efficiency_mm2_per_bps),
                }
            )


def write_scatter_csv(path, records: list[HwRecord]) -> None:
    """Plot-ready axes only: label,family,time_ns_per_bit,area_mm2,efficiency."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "family", "time_ns_per_bit", "area_mm2", "efficiency_mm2_per_bps"])
        for r in records:
            w.writerow(
                [r.label, r.family, repr(r.time_ns_per_bit), repr(r.area_mm2),
                 repr(r.efficiency_mm2_per_bps)]
            )


def write_iso_lines_csv(path, lines) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["efficiency_mm2_ns_per_bit", "time_ns_per_bit", "area_mm2"])
        for c, (t0, a0), (t1, a1) in lines:
            w.writerow([repr(c), repr(t0), repr(a0)])
            w.writerow([repr(c), repr(t1), repr(a1)])
