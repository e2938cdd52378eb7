"""Compiled vs pure-Python Smith normal form kernels.

    python3 benchmarks/bench_snf.py [--count 500] [--seed 0]

Each family is run through both kernels on the same matrices; the compiled
column includes the time spent re-running overflowed inputs in Python.
"""

import argparse
import random
import time

from kkcalc._kernels import compiled_snf_kernel, pure_snf_kernel, snf_kernel


def sparse(rng, n, density=0.3, bound=9):
    return [[rng.randint(-bound, bound) if rng.random() < density else 0 for _ in range(n)]
            for _ in range(n)]


def dense(rng, n, bound):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


FAMILIES = {
    "sparse 6x6, |a| <= 9": lambda rng: sparse(rng, 6),
    "sparse 12x12, |a| <= 9": lambda rng: sparse(rng, 12, 0.15),
    "dense 4x4, |a| <= 50": lambda rng: dense(rng, 4, 50),
    "dense 8x8, |a| <= 5": lambda rng: dense(rng, 8, 5),
    "dense 8x8, |a| <= 50": lambda rng: dense(rng, 8, 50),
}


def timed(kernel, mats):
    t = time.perf_counter()
    overflow = 0
    for a in mats:
        n = len(a)
        try:
            kernel(a, n, n)
        except OverflowError:
            overflow += 1
    return time.perf_counter() - t, overflow


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if compiled_snf_kernel is None:
        print("compiled kernel not built; only the pure-Python timings are meaningful")
    print(f"{'family':<26} {'python s':>9} {'compiled s':>11} {'speedup':>8} {'overflowed':>11}")
    for name, make in FAMILIES.items():
        rng = random.Random(args.seed)
        mats = [make(rng) for _ in range(args.count)]
        tp, _ = timed(pure_snf_kernel, mats)
        if compiled_snf_kernel is None:
            print(f"{name:<26} {tp:9.3f} {'-':>11} {'-':>8} {'-':>11}")
            continue
        _, overflow = timed(compiled_snf_kernel, mats)
        tc, _ = timed(snf_kernel, mats)
        print(f"{name:<26} {tp:9.3f} {tc:11.3f} {tp / tc:7.1f}x {overflow:>11}")


if __name__ == "__main__":
    main()
