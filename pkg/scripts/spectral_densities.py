"""Spectral densities of growing and descending trees next to the semicircle.

Writes one CSV per profile with columns ``left,right,density,semicircle``.
"""

import argparse
import csv
from pathlib import Path

from supertrees.spectral import spectral_density
from supertrees.supertree import build_profile, transfer_matrix

# (name, kind, p0, a, K)
PROFILES = [
    ("growing_a1", "growing", 1, 1, 400),
    ("descending_p800_a-2", "descending", 800, -2, 400),
    # slow branching in both directions, under the growing weight rule
    ("slow_up", "growing", 1, 0.0025, 400),
    ("slow_down", "growing", 1, -0.0025, 400),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("densities_out"))
    ap.add_argument("--bins", type=int, default=60)
    args = ap.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)

    for name, kind, p0, a, K in PROFILES:
        prof = build_profile(kind, K=K, p0=p0, a=a)
        hist = spectral_density(transfer_matrix(prof), bins=args.bins)
        path = args.outdir / f"{name}.csv"
        with path.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["left", "right", "density", "semicircle"])
            w.writerows(hist.rows())
        print(f"{name}: K={K}, support [{hist.edges[0]:.3f}, {hist.edges[-1]:.3f}] -> {path}")


if __name__ == "__main__":
    main()
