"""Frame-level Monte Carlo FER/BER campaigns.

A campaign binds one scenario (code + decoder) to a grid of Eb/N0 points.
Frame f always draws its payload and noise from the counter-based stream
(master_seed, f), and the stopping rule is evaluated on whole batches in
frame order, so results are a pure function of the campaign definition:
re-runs agree byte for byte whatever the worker count.
"""

from __future__ import annotations

import csv
import hashlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .core import ChannelSpec, RngStream

RESULT_FIELDS = ("scenario", "ebn0_db", "frames", "frame_errors", "bit_errors", "fer", "ber")


@dataclass(frozen=True)
class PointResult:
    scenario: str
    ebn0_db: float
    frames: int
    frame_errors: int
    bit_errors: int
    wall_seconds: float = 0.0

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    def ber(self, payload_bits: int) -> float:
        return self.bit_errors / (self.frames * payload_bits) if self.frames else 0.0


@dataclass(frozen=True)
class Campaign:
    """Scenario plus grid and stopping parameters.

    ``scenario`` must provide .name, .code_rate, .payload_bits and a
    .new_runner() factory whose runner exposes run_frame(gen, chan,
    noiseless) -> (frame_error, bit_errors).
    """

    scenario: object
    ebn0_points: tuple[float, ...]
    master_seed: int
    min_frame_errors: int = 100
    max_frames: int = 10_000_000
    batch_size: int = 500
    noiseless: bool = False
    fer_floor: float | None = None

    def __post_init__(self):
        pts = tuple(float(p) for p in self.ebn0_points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("ebn0 points must be strictly increasing")
        object.__setattr__(self, "ebn0_points", pts)
        if self.min_frame_errors < 1:
            raise ValueError("min_frame_errors must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


_RUNNER_CACHE: dict[str, object] = {}


def _run_batch(scenario, ebn0_db, master_seed, lo, hi, noiseless):
    """Decode frames lo..hi-1; returns (frames, frame_errors, bit_errors)."""
    runner = _RUNNER_CACHE.get(scenario.name)
    if runner is None:
        runner = scenario.new_runner()
        _RUNNER_CACHE[scenario.name] = runner
    chan = ChannelSpec(ebn0_db, scenario.code_rate)
    ferr = 0
    berr = 0
    for f in range(lo, hi):
        gen = RngStream(master_seed, f).generator()
        fe, be = runner.run_frame(gen, chan, noiseless)
        if fe:
            ferr += 1
        berr += be
    return hi - lo, ferr, berr


def run_point(campaign: Campaign, ebn0_db: float, workers: int = 1) -> PointResult:
    """Simulate one Eb/N0 point under the campaign stopping rule."""
    t0 = time.perf_counter()
    cap = campaign.max_frames
    if campaign.noiseless:
        cap = min(cap, 1000)
    bs = campaign.batch_size
    target = campaign.min_frame_errors

    frames = ferr = berr = 0

    def batches():
        lo = 0
        while lo < cap:
            hi = min(lo + bs, cap)
            yield lo, hi
            lo = hi

    if workers <= 1:
        for lo, hi in batches():
            n, fe, be = _run_batch(
                campaign.scenario, ebn0_db, campaign.master_seed, lo, hi, campaign.noiseless
            )
            frames += n
            ferr += fe
            berr += be
            if ferr >= target:
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending = []
            gen = batches()
            exhausted = False
            while True:
                while not exhausted and len(pending) < 2 * workers:
                    try:
                        lo, hi = next(gen)
                    except StopIteration:
                        exhausted = True
                        break
                    pending.append(
                        pool.submit(
                            _run_batch,
                            campaign.scenario,
                            ebn0_db,
                            campaign.master_seed,
                            lo,
                            hi,
                            campaign.noiseless,
                        )
                    )
                if not pending:
                    break
                n, fe, be = pending.pop(0).result()
                frames += n
                ferr += fe
                berr += be
                if ferr >= target:
                    for fut in pending:
                        fut.cancel()
                    break

    return PointResult(
        scenario=campaign.scenario.name,
        ebn0_db=float(ebn0_db),
        frames=frames,
        frame_errors=ferr,
        bit_errors=berr,
        wall_seconds=time.perf_counter() - t0,
    )


def _fmt(x: float) -> str:
    return repr(float(x))


def result_rows(results, payload_bits: int):
    for r in results:
        yield {
            "scenario": r.scenario,
            "ebn0_db": _fmt(r.ebn0_db),
            "frames": str(r.frames),
            "frame_errors": str(r.frame_errors),
            "bit_errors": str(r.bit_errors),
            "fer": _fmt(r.fer),
            "ber": _fmt(r.ber(payload_bits)),
        }


def write_results_csv(path, results, payload_bits: int) -> None:
    """Deterministic CSV: the statistical payload only, no timing."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=RESULT_FIELDS)
        w.writeheader()
        for row in result_rows(results, payload_bits):
            w.writerow(row)


def read_results_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def run_campaign(
    campaign: Campaign,
    out_dir,
    workers: int = 1,
    resume: bool = True,
) -> list[PointResult]:
    """Run all points, persisting results incrementally.

    Writes <name>.csv (deterministic payload) and <name>.manifest.json
    (config echo, seed, wall times). Completed (scenario, ebn0) points
    found in an existing CSV are carried over untouched.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    name = campaign.scenario.name
    csv_path = out_dir / f"{name}.csv"
    manifest_path = out_dir / f"{name}.manifest.json"

    done: dict[float, PointResult] = {}
    if resume and csv_path.exists():
        for row in read_results_csv(csv_path):
            if row["scenario"] != name:
                continue
            done[float(row["ebn0_db"])] = PointResult(
                scenario=name,
                ebn0_db=float(row["ebn0_db"]),
                frames=int(row["frames"]),
                frame_errors=int(row["frame_errors"]),
                bit_errors=int(row["bit_errors"]),
            )

    results: list[PointResult] = []
    wall: dict[str, float] = {}
    aborted = False
    for ebn0 in campaign.ebn0_points:
        if aborted:
            break
        if ebn0 in done:
            res = done[ebn0]
        else:
            res = run_point(campaign, ebn0, workers=workers)
        results.append(res)
        wall[f"{ebn0:g}"] = round(res.wall_seconds, 3)
        write_results_csv(csv_path, results, campaign.scenario.payload_bits)
        _write_manifest(manifest_path, campaign, wall, workers)
        if campaign.fer_floor is not None and res.fer < campaign.fer_floor:
            aborted = True
    return results


def scenario_fingerprint(scenario) -> str:
    """Stable hash of the scenario's defining data (for the manifest)."""
    h = hashlib.sha256()
    h.update(scenario.name.encode())
    for key, val in sorted(vars(scenario).items()):
        h.update(key.encode())
        if isinstance(val, np.ndarray):
            h.update(val.tobytes())
        else:
            h.update(repr(val).encode())
    return h.hexdigest()


def _write_manifest(path, campaign: Campaign, wall: dict, workers: int) -> None:
    scen = campaign.scenario
    doc = {
        "scenario": scen.name,
        "code_rate": scen.code_rate,
        "payload_bits": scen.payload_bits,
        "scenario_sha256": scenario_fingerprint(scen),
        "master_seed": campaign.master_seed,
        "min_frame_errors": campaign.min_frame_errors,
        "max_frames": campaign.max_frames,
        "batch_size": campaign.batch_size,
        "noiseless": campaign.noiseless,
        "fer_floor": campaign.fer_floor,
        "ebn0_points": list(campaign.ebn0_points),
        "workers": workers,
        "wall_seconds": wall,
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def ebn0_at_fer(points: list[tuple[float, float]], target: float) -> float | None:
    """Eb/N0 where the FER curve crosses ``target``.

    Log-linear interpolation between the bracketing grid points; None when
    the curve never crosses. Points are (ebn0_db, fer), increasing dB.
    """
    pts = [(x, f) for x, f in points if f > 0.0]
    for (x0, f0), (x1, f1) in zip(pts, pts[1:]):
        if f0 >= target >= f1:
            if f0 == f1:
                return x0
            lf0, lf1, lt = np.log10(f0), np.log10(f1), np.log10(target)
            return x0 + (x1 - x0) * (lf0 - lt) / (lf0 - lf1)
    return None
