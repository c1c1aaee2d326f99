#!/usr/bin/env python3
"""Timing table for the prime-length transform: Rader fast path vs the
quadratic oracle, plus the agreement between them."""

import argparse
import time

import numpy as np

from zpwiener.fourier import _dft1d_fast, _dft1d_naive


def best_of(fn, x, repeats: int) -> float:
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(x)
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", default="101,1009,10007")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'p':>8} {'fast (ms)':>12} {'naive (ms)':>12} {'speedup':>9} {'rel l2':>10}")
    for token in args.primes.split(","):
        p = int(token)
        x = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        _dft1d_fast(x)  # warm the plan cache
        t_fast = best_of(_dft1d_fast, x, args.repeats)
        t_naive = best_of(_dft1d_naive, x, args.repeats)
        rel = np.linalg.norm(_dft1d_fast(x) - _dft1d_naive(x)) / np.linalg.norm(
            _dft1d_naive(x)
        )
        print(
            f"{p:>8} {t_fast * 1e3:>12.3f} {t_naive * 1e3:>12.3f} "
            f"{t_naive / t_fast:>8.1f}x {rel:>10.2e}"
        )


if __name__ == "__main__":
    main()
