"""Compare the numba and numpy implementations of the monomial kernels.

Run with ``python3 benchmarks/bench_kernels.py [--repeat R]``. JIT compilation
is triggered once before timing and reported separately. Every timed call is
also checked for agreement between the two backends.
"""

import argparse
import time
import timeit

import numpy as np

from symsig import _kernels


def workloads(rng):
    """(kernel, label, args) triples of increasing size."""
    out = []
    for n, k, q in ((4, 6, 8), (6, 10, 10), (8, 16, 12)):
        A = rng.integers(0, 4, size=(k, n), dtype=np.int64)
        out.append(("standard_count", f"n={n} k={k} q={q}", (A, n, q)))
    for k, n in ((50, 6), (200, 8), (600, 10)):
        A = rng.integers(0, 5, size=(k, n), dtype=np.int64)
        out.append(("minimal_mask", f"k={k} n={n}", (A,)))
    for n, k in ((8, 10), (12, 20), (16, 30)):
        A = rng.integers(0, 2, size=(k, n), dtype=np.int64)
        masks = np.array([sum(1 << t for t in range(n) if r[t]) for r in A], dtype=np.int64)
        masks = masks[masks != 0]
        out.append(("max_independent", f"n={n} k={len(masks)}", (masks, n)))
    for n, m, q in ((2, 3, 300), (3, 5, 60), (4, 7, 30)):
        W = rng.integers(0, m, size=(1, n), dtype=np.int64)
        out.append(("diagonal_invariant_count", f"n={n} m={m} q={q}", (W, m, n, q)))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    impls = _kernels.IMPLEMENTATIONS
    if "numba" not in impls:
        print("numba is unavailable (or SYMSIG_DISABLE_NUMBA is set); timing numpy only")
    rng = np.random.default_rng(args.seed)
    cases = workloads(rng)

    if "numba" in impls:
        t = time.perf_counter()
        for name, _, a in cases:
            impls["numba"][name](*a)
        print(f"numba JIT warm-up (all kernels): {time.perf_counter() - t:.2f} s")

    header = f"{'kernel':<26}{'workload':<20}" + "".join(f"{b + ' [ms]':>14}" for b in impls) + f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, label, a in cases:
        results, times = {}, {}
        for backend, table in impls.items():
            fn = table[name]
            results[backend] = fn(*a)
            number = 1
            times[backend] = min(timeit.repeat(lambda: fn(*a), number=number, repeat=args.repeat)) * 1e3
        values = list(results.values())
        agree = all(np.array_equal(values[0], v) for v in values[1:])
        row = f"{name:<26}{label:<20}" + "".join(f"{times[b]:>14.3f}" for b in impls)
        if "numba" in times:
            row += f"{times['numpy'] / times['numba']:>9.1f}x"
        if not agree:
            row += "  MISMATCH"
        print(row)


if __name__ == "__main__":
    main()
