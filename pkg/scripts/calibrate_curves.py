"""Coarse FER scans for the shipped scenario recipes.

Prints each curve and its interpolated Eb/N0 at FER targets; used while
pinning acceptance grids. Results land under results-calib/.
"""

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from fecbench.montecarlo import Campaign, ebn0_at_fer, run_campaign
from fecbench.recipes import build_scenarios, load_recipe

SCANS = [
    # (recipe, decoder-filter, min_errors, max_frames, fer_floor)
    ("80211ad-r12-ldpc", None, 80, 800_000, 2.5e-4),
    ("80211ad-r12-scl", None, 80, 400_000, 2.5e-4),
    ("80211n-r12-ldpc", None, 80, 600_000, 2.5e-4),
    ("80211n-r12-scl", None, 80, 400_000, 2.5e-4),
    ("80211n-r12-polar", "sc", 80, 400_000, 2.5e-4),
    ("8023an-ldpc", None, 80, 400_000, 2.5e-4),
    ("8023an-scl", None, 80, 400_000, 2.5e-4),
    ("8023an-polar", "sc", 80, 400_000, 2.5e-4),
    ("8023an-polar", "bp", 80, 300_000, 2.5e-4),
    ("lte-r13-turbo", None, 80, 60_000, 2.0e-3),
    ("lte-r13-scl", None, 80, 60_000, 2.0e-3),
]


def main():
    out = Path("results-calib")
    for name, only, min_err, max_frames, floor in SCANS:
        recipe = load_recipe(name)
        t0 = time.time()
        for scen in build_scenarios(recipe):
            if only and not scen.name.endswith("-" + only):
                continue
            camp = Campaign(
                scenario=scen,
                ebn0_points=recipe.ebn0_grid,
                master_seed=2024,
                min_frame_errors=min_err,
                max_frames=max_frames,
                fer_floor=floor,
            )
            results = run_campaign(camp, out, workers=2)
            pts = [(r.ebn0_db, r.fer) for r in results]
            print(f"\n== {scen.name} ({time.time()-t0:.0f}s)")
            for x, f in pts:
                print(f"   {x:5.2f} dB  fer={f:.3e}")
            for target in (1e-1, 1e-2, 1e-3):
                cross = ebn0_at_fer(pts, target)
                if cross is not None:
                    print(f"   FER {target:g} at {cross:.3f} dB")
            sys.stdout.flush()


if __name__ == "__main__":
    main()
