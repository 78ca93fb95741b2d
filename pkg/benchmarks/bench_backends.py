#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot kernels (per-sample loss and gradient sweeps) on
synthetic workloads of increasing size, checks that both backends agree,
and optionally times a full training run under each backend.

Usage:
    python benchmarks/bench_backends.py
    python benchmarks/bench_backends.py --pairs 20000 --dim 8 --repeats 300 --train
"""

import argparse
import json
import time

import numpy as np

import lielearn as ll
from lielearn import _kernels_numba as knb
from lielearn import _kernels_numpy as knp

EPS = 1e-12


def make_batch(count, n, seed=0):
    rng = np.random.default_rng(seed)
    xs = rng.normal(size=(count, n))
    ys = xs + 0.1 * rng.normal(size=(count, n))
    a = rng.normal(size=(n, n))
    return a, xs, ys


def time_call(fn, *args, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(count, n, repeats):
    a, xs, ys = make_batch(count, n)

    # agreement sanity before timing (also numba warm-up)
    np.testing.assert_allclose(
        knp.loss_terms(a, xs, ys, EPS), knb.loss_terms(a, xs, ys, EPS), rtol=1e-12, atol=1e-12
    )
    np.testing.assert_allclose(
        knp.grad_terms(a, xs, ys, EPS), knb.grad_terms(a, xs, ys, EPS), rtol=1e-12, atol=1e-12
    )

    rows = []
    for name, fn in (("loss_terms", "loss_terms"), ("grad_terms", "grad_terms")):
        t_np = time_call(getattr(knp, fn), a, xs, ys, EPS, repeats=repeats)
        t_nb = time_call(getattr(knb, fn), a, xs, ys, EPS, repeats=repeats)
        rows.append(
            {
                "kernel": name,
                "pairs": count,
                "dim": n,
                "numpy_us": t_np * 1e6,
                "numba_us": t_nb * 1e6,
                "speedup": t_np / t_nb,
            }
        )
    return rows


def bench_train(count, seed):
    ds = ll.generate_pairs(ll.so2_generator(), count, 0.0, np.pi / 30, seed=seed)
    rows = []
    original = ll.active_backend()
    try:
        for backend in ("numpy", "numba"):
            ll.set_backend(backend)
            t0 = time.perf_counter()
            res = ll.train(ds, ll.TrainConfig())
            dt = time.perf_counter() - t0
            rows.append(
                {
                    "backend": backend,
                    "pairs": count,
                    "train_s": dt,
                    "epochs": res.epochs_run,
                    "final_risk": res.loss_history[-1],
                }
            )
    finally:
        ll.set_backend(original)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--pairs", type=int, default=None, help="single workload size (default: sweep)")
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument("--repeats", type=int, default=200)
    parser.add_argument("--train", action="store_true", help="also time a full training run per backend")
    parser.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = parser.parse_args()

    workloads = [(args.pairs, args.dim)] if args.pairs else [(1000, 2), (10000, 2), (10000, 6), (100000, 3)]

    results = []
    for count, n in workloads:
        results.extend(bench_kernels(count, n, args.repeats))

    if args.json:
        for row in results:
            print(json.dumps(row))
    else:
        print(f"{'kernel':<12} {'pairs':>8} {'dim':>4} {'numpy (us)':>12} {'numba (us)':>12} {'speedup':>9}")
        for r in results:
            print(
                f"{r['kernel']:<12} {r['pairs']:>8} {r['dim']:>4} "
                f"{r['numpy_us']:>12.1f} {r['numba_us']:>12.1f} {r['speedup']:>8.2f}x"
            )

    if args.train:
        rows = bench_train(count=1000, seed=42)
        if args.json:
            for row in rows:
                print(json.dumps(row))
        else:
            print()
            print(f"{'backend':<8} {'pairs':>8} {'train (s)':>10} {'epochs':>7} {'final risk':>12}")
            for r in rows:
                print(f"{r['backend']:<8} {r['pairs']:>8} {r['train_s']:>10.3f} {r['epochs']:>7} {r['final_risk']:>12.4e}")


if __name__ == "__main__":
    main()
