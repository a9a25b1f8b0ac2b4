"""Compare the compiled tally kernels against the numpy fallback.

Run: python benchmarks/bench_kernels.py [--samples N] [--repeat R]
"""

import argparse
import time
from itertools import permutations

import numpy as np

from semdisc import _mc_pure
from semdisc.kernels import BACKEND

try:
    from semdisc import _mc_ext
except ImportError:
    _mc_ext = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_tally(samples, k, n, repeat, rng):
    draws = np.ascontiguousarray(rng.normal(size=(samples, k, n)))
    perm_cols = np.array(list(permutations(range(n), k)), dtype=np.int64)
    results = {}
    for name, mod in (("numpy", _mc_pure), ("cython", _mc_ext)):
        if mod is None:
            continue
        counts = np.zeros(len(perm_cols), dtype=np.int64)
        results[name] = (
            _time(lambda: mod.tally_argmax(draws, perm_cols, counts), repeat),
            counts.copy(),
        )
    return results


def bench_count(samples, repeat, rng):
    draws = np.ascontiguousarray(rng.normal(size=(samples, 4)))
    results = {}
    for name, mod in (("numpy", _mc_pure), ("cython", _mc_ext)):
        if mod is None:
            continue
        results[name] = (_time(lambda: mod.count_positive_2x2(draws), repeat), None)
    return results


def report(title, results, samples):
    print(f"\n{title} ({samples} samples)")
    base = results["numpy"][0]
    for name, (t, _) in results.items():
        rate = samples / t / 1e6
        speedup = base / t
        print(f"  {name:7s} {t * 1e3:9.2f} ms   {rate:8.1f} Msamples/s   x{speedup:.2f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    print(f"active backend: {BACKEND}")
    if _mc_ext is None:
        print("compiled extension not available; timing the fallback only")
    rng = np.random.default_rng(0)

    # 4x8 has 1680 candidate mappings; keep the sample count small because
    # the numpy path materializes a samples x mappings totals matrix.
    results = bench_tally(min(args.samples // 100, 20_000), 4, 8, args.repeat, rng)
    report("tally_argmax 4x8 (1680 mappings)", results, min(args.samples // 100, 20_000))
    if len(results) == 2:
        assert np.array_equal(results["numpy"][1], results["cython"][1]), "backend tallies differ"
        print("  tallies identical across backends")

    results = bench_tally(args.samples, 2, 2, args.repeat, rng)
    report("tally_argmax 2x2", results, args.samples)

    results = bench_count(args.samples, args.repeat, rng)
    report("count_positive_2x2", results, args.samples)


if __name__ == "__main__":
    main()
