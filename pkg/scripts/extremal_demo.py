#!/usr/bin/env python3
"""Solve the minimal-norm extension problem for truncated
point-evaluation kernels and compare with the closed form (1-r)^{-1/q*}.

Usage: python scripts/extremal_demo.py [--q 1.3333] [--w 0.3,0.5,0.7] [--degree 40]
"""

import argparse
import sys

from rieszlab import dual_extremal_solve, truncated_szego_poly
from rieszlab.norms import conjugate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", type=float, default=4.0 / 3.0)
    ap.add_argument("--w", default="0.3,0.5,0.7")
    ap.add_argument("--degree", type=int, default=40)
    args = ap.parse_args()
    ws = [float(t) for t in args.w.split(",") if t.strip()]
    q_star = conjugate(args.q)

    print(f"{'w':>6} {'solver':>14} {'closed form':>14} {'gap':>10} {'dual gap':>10} {'iters':>6}")
    for w in ws:
        phi = truncated_szego_poly(w, args.degree)
        triple = dual_extremal_solve(phi, q=args.q)
        closed = (1.0 - w * w) ** (-1.0 / q_star)
        print(
            f"{w:>6g} {triple.value:>14.10f} {closed:>14.10f} "
            f"{triple.value - closed:>10.2e} {triple.duality_gap:>10.2e} {triple.iterations:>6}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
