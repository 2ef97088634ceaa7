#!/usr/bin/env python3
"""Wall-clock the fast evaluators against the direct defining sums.

Equivalent to `qgft bench`, plus a per-bin cost column that makes the
O(N^2 log N) vs O(N^3)-per-stage scaling visible.
"""

import argparse
import time

import numpy as np

from qgft import FiniteAbelianGroup, random_signal
from qgft.qft import rqft_direct, rqft_fast


def timeit(fn, arg, repeats):
    fn(arg)  # warm up
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(arg)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+",
                    default=[8, 16, 32, 48, 96, 192, 384])
    ap.add_argument("--direct-limit", type=int, default=48)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'N':>5} {'bins':>8} {'fast [ms]':>10} {'ns/bin':>8} {'direct [ms]':>12} {'speedup':>8}")
    for n in args.sizes:
        g = FiniteAbelianGroup((n,))
        f = random_signal(g, rng)
        t_fast = timeit(rqft_fast, f, args.repeats)
        per_bin = t_fast / (n * n) * 1e9
        if n <= args.direct_limit:
            t_direct = timeit(rqft_direct, f, args.repeats)
            print(f"{n:>5} {n*n:>8} {t_fast*1e3:>10.3f} {per_bin:>8.1f} "
                  f"{t_direct*1e3:>12.3f} {t_direct/t_fast:>8.1f}")
        else:
            print(f"{n:>5} {n*n:>8} {t_fast*1e3:>10.3f} {per_bin:>8.1f} {'-':>12} {'-':>8}")


if __name__ == "__main__":
    main()
