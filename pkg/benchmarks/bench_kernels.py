"""Timing comparison of the numba-compiled kernels vs the numpy fallbacks.

Each kernel ships in three flavors: the plain-python loop body, the same body
compiled with numba, and a vectorized numpy fallback (used when numba is
missing or TAILCLUST_NO_NUMBA is set). This script checks that the flavors
agree on a random input and then reports best-of-N wall times.

Run from the repository root:

    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --k 2000 --d 32 --repeats 50
"""

import argparse
import time

import numpy as np

from tailclust import kernels


def best_of(fn, args, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def flavors(stem):
    out = [("python", getattr(kernels, f"_{stem}_loops")),
           ("numpy", getattr(kernels, f"_{stem}_numpy"))]
    if kernels.HAVE_NUMBA:
        out.append(("numba", getattr(kernels, f"_{stem}_njit")))
    return out


def run(k, d, repeats):
    rng = np.random.default_rng(0)
    u = (np.argsort(np.argsort(rng.random((k, d)), axis=0), axis=0) + 1.0) / k
    idx = np.arange(d // 2, dtype=np.int64)
    chi = np.corrcoef(rng.random((d, 5 * d)))
    np.fill_diagonal(chi, 1.0)
    tau = 0.1

    cases = [
        ("pairwise_abs_diff_sums", (u,), np.allclose),
        ("subset_gap_sum", (u, idx), np.isclose),
        ("eco_labels", (chi, tau), np.array_equal),
    ]

    print(f"k={k} rows, d={d} columns, best of {repeats} runs")
    print(f"{'kernel':<24}{'flavor':<8}{'seconds':>12}{'vs numpy':>10}")
    for stem, args, same in cases:
        variants = flavors(stem)
        reference = variants[0][1](*args)
        for _, fn in variants[1:]:
            fn(*args)  # warm-up (and jit compile)
            assert same(fn(*args), reference), f"{stem} flavors disagree"
        timed = [(name, best_of(fn, args, repeats)) for name, fn in variants]
        baseline = dict(timed)["numpy"]
        for name, sec in timed:
            print(f"{stem:<24}{name:<8}{sec:12.6f}{baseline / sec:9.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=500, help="rows (block count)")
    ap.add_argument("--d", type=int, default=16, help="columns (variables)")
    ap.add_argument("--repeats", type=int, default=200)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not importable: timing python and numpy flavors only")
    run(args.k, args.d, args.repeats)


if __name__ == "__main__":
    main()
