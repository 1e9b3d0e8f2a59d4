"""Compare the compiled and numpy kernels, alone and inside a full optimizer run.

    python benchmarks/bench_kernels.py [--repeat 2000]
"""

import argparse
import time
from contextlib import contextmanager

import numpy as np

from fingerprint_lab import OptimizerConfig, haar_family, kernels, optimize


@contextmanager
def use_backend(mod):
    saved = kernels.overlap_gram, kernels.smooth_value_grad
    kernels.overlap_gram, kernels.smooth_value_grad = mod.overlap_gram, mod.smooth_value_grad
    try:
        yield
    finally:
        kernels.overlap_gram, kernels.smooth_value_grad = saved


def time_call(fn, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn()
    return (time.perf_counter() - t0) / repeat


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--repeat", type=int, default=2000)
    args = p.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)} (default {kernels.BACKEND})")

    print(f"\n{'m':>3} {'n':>3} " + " ".join(f"{name + ' us':>12}" for name in backends))
    for m, n in [(5, 2), (10, 2), (16, 3), (32, 4), (64, 8)]:
        ops = haar_family(n, m, 0).members
        w = np.full(n, 1.0 / n)
        cols = [time_call(lambda: mod.smooth_value_grad(ops, w, 50.0), args.repeat) * 1e6
                for mod in backends.values()]
        print(f"{m:>3} {n:>3} " + " ".join(f"{c:12.2f}" for c in cols))

    print("\nfull optimize, m=5 n=2, 5000 iterations, stopping disabled:")
    cfg = dict(m=5, n=2, seed=0, max_iterations=5000, stop_gap=-1.0, stop_stall=10**9)
    for name, mod in backends.items():
        with use_backend(mod):
            t0 = time.perf_counter()
            sol = optimize(OptimizerConfig(**cfg))
            elapsed = time.perf_counter() - t0
        print(f"  {name:>7}: {elapsed:6.2f} s  coherence {sol.coherence:.12f}")


if __name__ == "__main__":
    main()
