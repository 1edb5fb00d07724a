#!/usr/bin/env python3
"""Tabulate the ladder's two logarithmic derivatives over p and report the
locations and heights of their maxima.

Usage: python3 scripts/sweep_log_derivatives.py [--step 0.01] [--out FILE.csv]
"""

import argparse
import csv
import sys

from relfreq.asymptotics import log_derivative_maxima, log_derivatives


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--out", help="CSV output path (default stdout)")
    args = parser.parse_args()

    rows = []
    p = args.step
    while p < 1 - 1e-12:
        d_zeta, d_alpha = log_derivatives(p)
        rows.append({"p": round(p, 10), "dLnZeta": d_zeta, "dLnAlpha": d_alpha})
        p += args.step

    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=["p", "dLnZeta", "dLnAlpha"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()

    maxima = log_derivative_maxima()
    (p_z, v_z), (p_a, v_a) = maxima["zeta"], maxima["alpha"]
    print(f"# max dLnZeta  = {v_z:.7f} at p = {p_z:.7f}", file=sys.stderr)
    print(f"# max dLnAlpha = {v_a:.7f} at p = {p_a:.7f}", file=sys.stderr)


if __name__ == "__main__":
    main()
