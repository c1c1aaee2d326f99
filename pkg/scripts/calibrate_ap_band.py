#!/usr/bin/env python3
"""Calibrate the acceptance band for the progression scan.

Runs the quadratic-oracle transform on p = 1009 over a sweep of half-widths,
prints the observed ratio range wiener_norm / ln|A|, and the suggested band
(min/max widened by 20% each way).  The frozen band in the acceptance suite
came from this script's output.
"""

import argparse

from zpwiener.verify import ap_scan


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=1009)
    parser.add_argument("--ns", default="10,31,100,251",
                        help="comma-separated progression half-widths")
    parser.add_argument("--margin", type=float, default=0.20)
    args = parser.parse_args()

    ns = [int(n) for n in args.ns.split(",")]
    rows = ap_scan(args.p, ns, method="naive")
    print(f"p = {args.p} (quadratic oracle)")
    for row in rows:
        print(f"  size {row.size:6d}  norm {row.wiener_norm:9.6f}  ratio {row.ratio:.6f}")
    ratios = [row.ratio for row in rows]
    lo, hi = min(ratios), max(ratios)
    print(f"observed ratio range: [{lo:.4f}, {hi:.4f}]")
    print(f"suggested band (+-{args.margin:.0%}): "
          f"[{lo * (1 - args.margin):.4f}, {hi * (1 + args.margin):.4f}]")


if __name__ == "__main__":
    main()
