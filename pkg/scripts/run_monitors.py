#!/usr/bin/env python3
"""Sweep the empirical-ratio monitors over seeded instances and write a CSV.

These track bounds whose absolute constants are unspecified, so nothing is
asserted: the point is to eyeball how the ratios behave as instances grow.
"""

import argparse
import csv
import sys

import numpy as np

from zpwiener.energy import is_dissociated
from zpwiener.verify import monitor, random_instance


def dissociated_instance(seed: int, p: int, size: int) -> dict:
    """Grow a dissociated candidate until it actually is dissociated."""
    from zpwiener.groups import GroupContext

    ctx = GroupContext(p)
    rng = np.random.default_rng(seed)
    chosen: list[int] = []
    for x in rng.permutation(np.arange(1, p)):
        if len(chosen) == size:
            break
        if is_dissociated(chosen + [int(x)], ctx).dissociated:
            chosen.append(int(x))
    return {"p": p, "d": 1, "points": [[x] for x in sorted(chosen)]}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=1009)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--sizes", default="4,6,8,10,12")
    parser.add_argument("--output", default="-")
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    rows = []
    for i, size in enumerate(sizes):
        seed = args.seed * 1000 + i
        uni = random_instance("unimodular-function", seed, p=args.p, size=size)
        rows.append(("dim-bound", size, monitor("dim-bound", uni).ratio))
        rows.append(("log-support", size, monitor("log-support", uni).ratio))
        geq1 = random_instance("indicator", seed, p=args.p, size=size)
        rows.append(("t2-lower", size, monitor("t2-lower", geq1).ratio))
        for k in (2, 3):
            lam = dissociated_instance(seed, args.p, size)
            lam["k"] = k
            rows.append((f"rudin-k{k}", len(lam["points"]), monitor("rudin", lam).ratio))

    handle = sys.stdout if args.output == "-" else open(args.output, "w", newline="")
    writer = csv.writer(handle)
    writer.writerow(["monitor", "size", "ratio"])
    for name, size, ratio in rows:
        writer.writerow([name, size, f"{ratio:.8f}"])
    if handle is not sys.stdout:
        handle.close()
        print(f"wrote {len(rows)} rows to {args.output}")


if __name__ == "__main__":
    main()
