#!/usr/bin/env python3
"""Scan the 2-d perturbed family for the largest surviving projection
exponent and compare the eps -> 0 extrapolation against 4 - q*.

Usage: python scripts/threshold_scan.py [--q 1.5,2,3,4,inf] [--eps 0.08,0.04,0.02]
"""

import argparse
import sys

from rieszlab import threshold_scan
from rieszlab.norms import conjugate


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--q", default="1.5,2,3,4,inf")
    ap.add_argument("--eps", default="0.08,0.04,0.02")
    args = ap.parse_args()
    qs = [float(t) for t in args.q.split(",") if t.strip()]
    eps = tuple(float(t) for t in args.eps.split(",") if t.strip())

    print(f"{'q':>8} {'4-q*':>10} {'extrapolated':>14} {'error':>10}")
    for q in qs:
        scan = threshold_scan(q, eps_list=eps)
        expected = 4.0 - conjugate(q)
        if scan.extrapolated is None:
            print(f"{q:>8g} {expected:>10.6f} {'(none)':>14} {'-':>10}")
            continue
        err = scan.extrapolated - expected
        print(f"{q:>8g} {expected:>10.6f} {scan.extrapolated:>14.6f} {err:>10.2e}")
        for row in scan.rows:
            thr = "-" if row.threshold_p is None else f"{row.threshold_p:.4f}"
            print(f"         eps={row.eps:<6g} threshold_p={thr:<8} psi_norm={row.psi_norm:.8f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
