"""Command-line frontend.

Subcommands:
  construct        build a polar frozen-mask file
  simulate         run a recipe's FER/BER campaign, writing CSV + manifest
  hwscale          normalize an implementation-metrics CSV
  list-recipes     show shipped scenario recipes
  validate-assets  load every shipped asset and check its structure
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import hwscale as hw
from . import ldpc as ldpc_mod
from . import polar as polar_mod
from . import turbo as turbo_mod
from .montecarlo import Campaign, run_campaign
from .recipes import asset_root, build_scenarios, list_recipes, load_recipe


def _parse_grid(text: str) -> tuple[float, ...]:
    """Either 'start:step:stop' (inclusive) or a comma list."""
    if ":" in text:
        start, step, stop = (float(t) for t in text.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        n = int(round((stop - start) / step)) + 1
        return tuple(round(start + i * step, 10) for i in range(n))
    return tuple(float(t) for t in text.split(","))


def cmd_construct(args) -> int:
    n = args.n
    k_total = args.k
    mask = polar_mod.construct_monte_carlo(
        n, k_total, args.design_snr, trials=args.trials, seed=args.seed
    )
    polar_mod.save_frozen_mask(args.out, mask, args.design_snr)
    N = 1 << n
    print(
        f"wrote {args.out}: N={N} K={k_total} R={k_total / N:.4f} "
        f"design_snr={args.design_snr:g} dB trials={args.trials} seed={args.seed}"
    )
    return 0


def cmd_simulate(args) -> int:
    recipe = load_recipe(args.recipe)
    grid = _parse_grid(args.ebn0) if args.ebn0 else recipe.ebn0_grid
    scenarios = build_scenarios(recipe, construction_trials=args.construction_trials)
    out_dir = Path(args.out_dir)
    exit_code = 0
    for scen in scenarios:
        campaign = Campaign(
            scenario=scen,
            ebn0_points=grid,
            master_seed=args.seed,
            min_frame_errors=args.min_errors,
            max_frames=args.max_frames,
            batch_size=args.batch_size,
            noiseless=args.noiseless,
            fer_floor=args.fer_floor,
        )
        results = run_campaign(campaign, out_dir, workers=args.workers)
        for r in results:
            print(
                f"{scen.name} @ {r.ebn0_db:g} dB: fer={r.fer:.3e} "
                f"({r.frame_errors}/{r.frames} frames, {r.wall_seconds:.1f}s)"
            )
            if r.frames >= campaign.max_frames and r.frame_errors < campaign.min_frame_errors:
                exit_code = 1  # point hit the frame cap before the error target
    return exit_code


def cmd_hwscale(args) -> int:
    records = hw.read_records_csv(args.input)
    out = []
    applied: dict[str, list[str]] = {}
    for rec in records:
        notes = []
        if args.to_tech is not None:
            rec = hw.scale_technology(rec, args.to_tech)
            notes.append(f"tech->{args.to_tech:g}nm")
        rules = hw.applicable_code_rules(rec.family)
        tn = args.to_n if args.to_n is not None and "N" in rules else None
        tl = args.to_l if args.to_l is not None and "L" in rules else None
        ti = args.to_i if args.to_i is not None and "I" in rules else None
        if tn is not None or tl is not None or ti is not None:
            rec = hw.scale_code_params(rec, target_n=tn, target_l=tl, target_i=ti)
            if tn is not None:
                notes.append(f"N->{tn}")
            if tl is not None:
                notes.append(f"L->{tl}")
            if ti is not None:
                notes.append(f"I->{ti}")
        applied[rec.label] = notes
        out.append(rec)

    lo, hi = (int(t) for t in args.iso_decades.split(":"))
    prefix = Path(args.out_prefix)
    prefix.parent.mkdir(parents=True, exist_ok=True)
    scatter = Path(f"{prefix}.scatter.csv")
    normalized = Path(f"{prefix}.normalized.csv")
    iso = Path(f"{prefix}.iso.csv")
    manifest = Path(f"{prefix}.manifest.json")
    hw.write_scatter_csv(scatter, out)
    hw.write_records_csv(normalized, out)
    hw.write_iso_lines_csv(iso, hw.iso_efficiency_lines(lo, hi))
    manifest.write_text(
        json.dumps(
            {
                "input": str(args.input),
                "requested_rules": {
                    "to_tech": args.to_tech,
                    "to_N": args.to_n,
                    "to_L": args.to_l,
                    "to_I": args.to_i,
                },
                "applied": applied,
            },
            indent=2,
            sort_keys=True,
        )
        + "\n"
    )
    print(f"wrote {scatter}, {normalized}, {iso}, {manifest}")
    return 0


def cmd_list_recipes(args) -> int:
    for name in list_recipes():
        recipe = load_recipe(name)
        print(f"{name:24s} family={recipe.family:10s} grid={list(recipe.ebn0_grid)}")
    return 0


def cmd_validate_assets(args) -> int:
    root = asset_root()
    failures = 0

    def check(label, fn):
        nonlocal failures
        try:
            detail = fn()
            print(f"ok   {label}: {detail}")
        except Exception as exc:  # surface every broken asset, keep going
            failures += 1
            print(f"FAIL {label}: {exc}")

    def _ad():
        qc = ldpc_mod.load_matrix(root / "ldpc/80211ad_r12_z42.txt", "base-exponent-text")
        H = ldpc_mod.expand(qc)
        assert (H.n_cols, qc.z) == (672, 42), "dimension mismatch"
        return f"N={H.n_cols} M={H.n_rows} Z={qc.z}"

    def _n():
        qc = ldpc_mod.load_matrix(root / "ldpc/80211n_r12_z81.txt", "base-exponent-text")
        H = ldpc_mod.expand(qc)
        assert (H.n_cols, H.n_rows) == (1944, 972), "dimension mismatch"
        return f"N={H.n_cols} M={H.n_rows} Z={qc.z}"

    def _an():
        H = ldpc_mod.load_matrix(root / "ldpc/8023an_n2048.alist", "alist")
        assert H.n_cols == 2048, "dimension mismatch"
        rw = set(np.diff(H.row_ptr).tolist())
        cw = set(H.column_weights().tolist())
        assert rw == {32} and cw == {6}, f"irregular: rows {rw} cols {cw}"
        return f"N={H.n_cols} M={H.n_rows} (6,32)-regular"

    def _qpp():
        table = turbo_mod.load_qpp_table(root / "turbo/qpp_interleavers.txt")
        for k, (f1, f2) in table.items():
            turbo_mod.qpp_interleaver(k, f1, f2)
        return f"{len(table)} permutation(s): K={sorted(table)}"

    def _hw():
        recs = hw.read_records_csv(root / "hwscale/example_decoders.csv")
        return f"{len(recs)} records"

    def _recipes():
        names = list_recipes()
        for name in names:
            load_recipe(name)
        return f"{len(names)} recipes parse"

    check("ldpc/80211ad_r12_z42.txt", _ad)
    check("ldpc/80211n_r12_z81.txt", _n)
    check("ldpc/8023an_n2048.alist", _an)
    check("turbo/qpp_interleavers.txt", _qpp)
    check("hwscale/example_decoders.csv", _hw)
    check("recipes/*.toml", _recipes)
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fecbench", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a polar frozen-mask file")
    c.add_argument("--n", type=int, required=True, help="log2 of the blocklength")
    c.add_argument("--k", type=int, required=True, help="number of unfrozen positions")
    c.add_argument("--design-snr", type=float, required=True, help="design symbol SNR (Es/N0) in dB")
    c.add_argument("--trials", type=int, default=100_000)
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--out", default="frozen_mask.txt")
    c.set_defaults(fn=cmd_construct)

    s = sub.add_parser("simulate", help="run a recipe campaign")
    s.add_argument("recipe")
    s.add_argument("--ebn0", help="start:step:stop or comma list (defaults to the recipe grid)")
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--min-errors", type=int, default=100)
    s.add_argument("--max-frames", type=int, default=10_000_000)
    s.add_argument("--batch-size", type=int, default=500)
    s.add_argument("--noiseless", action="store_true")
    s.add_argument("--fer-floor", type=float, default=None)
    s.add_argument("--construction-trials", type=int, default=None)
    s.add_argument("--out-dir", default="results")
    s.set_defaults(fn=cmd_simulate)

    h = sub.add_parser("hwscale", help="normalize implementation metrics")
    h.add_argument("input")
    h.add_argument("--to-tech", type=float, default=None, help="target node in nm")
    h.add_argument("--to-N", type=int, default=None, dest="to_n")
    h.add_argument("--to-L", type=int, default=None, dest="to_l")
    h.add_argument("--to-I", type=int, default=None, dest="to_i")
    h.add_argument("--iso-decades", default="-3:2", help="lo:hi decade exponents")
    h.add_argument("--out-prefix", default="hwscale_out")
    h.set_defaults(fn=cmd_hwscale)

    l = sub.add_parser("list-recipes", help="show shipped recipes")
    l.set_defaults(fn=cmd_list_recipes)

    v = sub.add_parser("validate-assets", help="check every shipped asset")
    v.set_defaults(fn=cmd_validate_assets)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
