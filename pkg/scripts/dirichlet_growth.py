#!/usr/bin/env python3
"""Fit the growth of spherical Dirichlet kernel norms against the
expected R^{(d-1)/2} rate for small p.

Usage: python scripts/dirichlet_growth.py [--d 2] [--p 0.5,1] [--radii 5,10,20,40]

d=1 is the degenerate case (logarithmic growth, fitted exponent near 0).
"""

import argparse
import sys

from rieszlab import growth_fit


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d", type=int, default=2, choices=(1, 2, 3))
    ap.add_argument("--p", default="0.5,1")
    ap.add_argument("--radii", default=None)
    ap.add_argument("--grid", type=int, default=None)
    args = ap.parse_args()
    radii = args.radii or {1: "64,128,256,512", 2: "5,10,20,40", 3: "3,5,8,12"}[args.d]
    radii = [float(t) for t in radii.split(",") if t.strip()]
    ps = [float(t) for t in args.p.split(",") if t.strip()]

    print(f"{'d':>2} {'p':>6} {'exponent':>10} {'target':>8} {'c_hat':>10}")
    for p in ps:
        fit = growth_fit(args.d, p, radii, n_per_axis=args.grid)
        print(f"{fit.dim:>2} {fit.p:>6g} {fit.exponent:>10.4f} {fit.target:>8.2f} {fit.c_hat:>10.4f}")
        pairs = ", ".join(f"R={r:g}: {v:.4f}" for r, v in zip(fit.radii, fit.norms))
        print(f"   {pairs}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
