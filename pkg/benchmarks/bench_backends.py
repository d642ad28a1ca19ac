"""Compare the compiled kernel core against the pure-Python fallback.

Times the two hot loops (per-sequence featurization means and SVM epoch
updates) on pipeline-scale data, verifies bit-identical outputs, and
prints a small table.

    python benchmarks/bench_backends.py [--epochs 20] [--pairs 4000]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from ppipred._kernels import get_backend, seq_mean_rows, svm_epoch


def bench_featurize(impl, table, codes, offsets, repeats=3):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = seq_mean_rows(table, codes, offsets, impl=impl)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_train(impl, X, y, epochs):
    n, d = X.shape
    lam = 1.0 / n
    w = np.zeros(d)
    wsum = np.zeros(d)
    b, bsum, t = 0.0, 0.0, 0
    rng = np.random.default_rng(0)
    t0 = time.perf_counter()
    for _ in range(epochs):
        order = rng.permutation(n)
        b, bsum, t = svm_epoch(X, y, order, w, wsum, b, bsum, t, lam, 100.0,
                               impl=impl)
    return time.perf_counter() - t0, (w, wsum, b, bsum)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epochs", type=int, default=20)
    parser.add_argument("--pairs", type=int, default=4000)
    parser.add_argument("--proteins", type=int, default=2000)
    parser.add_argument("--mean-length", type=int, default=400)
    args = parser.parse_args()

    try:
        compiled = get_backend("compiled")
    except ImportError:
        print("compiled core not built (python setup.py build_ext --inplace)")
        return 1
    pure = get_backend("pure")

    rng = np.random.default_rng(42)
    table = np.ascontiguousarray(rng.normal(0, 30, (20, 14)))
    lengths = rng.poisson(args.mean_length, args.proteins).clip(1)
    codes = rng.integers(0, 20, int(lengths.sum()))
    offsets = np.zeros(args.proteins + 1, dtype=np.intp)
    offsets[1:] = np.cumsum(lengths)

    X = np.ascontiguousarray(rng.normal(0, 1, (args.pairs, 14)))
    y = np.where(rng.random(args.pairs) < 0.5, 1.0, -1.0)

    rows = []
    t_pure, out_pure = bench_featurize(pure, table, codes, offsets)
    t_comp, out_comp = bench_featurize(compiled, table, codes, offsets)
    assert np.array_equal(out_pure, out_comp), "featurize outputs differ"
    rows.append(("featurize means", f"{args.proteins} proteins, "
                 f"{int(lengths.sum())} residues", t_pure, t_comp))

    t_pure, state_pure = bench_train(pure, X, y, args.epochs)
    t_comp, state_comp = bench_train(compiled, X, y, args.epochs)
    for a, b in zip(state_pure, state_comp):
        assert np.array_equal(a, b), "svm states differ"
    rows.append(("svm epochs", f"{args.epochs} epochs x {args.pairs} rows",
                 t_pure, t_comp))

    print(f"{'kernel':<18}{'workload':<34}{'pure':>10}{'compiled':>10}{'speedup':>9}")
    for name, load, tp, tc in rows:
        print(f"{name:<18}{load:<34}{tp:>9.3f}s{tc:>9.3f}s{tp / tc:>8.1f}x")
    print("outputs bit-identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
