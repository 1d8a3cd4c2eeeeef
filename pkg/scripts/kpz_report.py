"""Edge, entropy and watermelon exponent checks as one JSON report.

``--synthetic`` feeds the pipeline pure leading-order laws, which shows what a
clean pass looks like; the default runs on exact spectra and path counts.
"""

import argparse
import json
import math

from supertrees.pathcount import WATERMELON_C, entropy, mean_displacement
from supertrees.scaling import kpz_pipeline, synthetic_sources
from supertrees.spectral import eigenvalues
from supertrees.supertree import build_profile, transfer_matrix


def leading_eigenvalue_view(N: int) -> dict:
    """Entropy and watermelon rebuilt from ``N ln lambda_max`` for comparison."""
    lam = eigenvalues(transfer_matrix(build_profile("growing", K=N, p0=1, a=1))).lambda_max
    S = N * math.log(lam)
    return {
        "N": N,
        "N_ln_lambda_max": S,
        "ln_total_count": entropy(N),
        "half_N_ln_4N": N / 2 * math.log(4 * N),
        "watermelon_coeff_from_lambda_max": (2 * S - math.lgamma(N + 1)) / N,
        "watermelon_target": WATERMELON_C,
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--mode", choices=["edge", "entropy", "watermelon", "all"], default="all")
    ap.add_argument("--synthetic", action="store_true")
    ap.add_argument("--N", type=int, default=1000, help="size for the lambda_max comparison")
    args = ap.parse_args(argv)

    report = kpz_pipeline(args.mode, sources=synthetic_sources() if args.synthetic else None)
    if not args.synthetic:
        report["leading_eigenvalue_view"] = leading_eigenvalue_view(args.N)
        prof = build_profile("growing", K=400, p0=1, a=1)
        report["mean_displacement_ratio_N400"] = mean_displacement(prof, 400) / 400
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
