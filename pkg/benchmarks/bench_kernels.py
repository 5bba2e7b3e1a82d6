"""Benchmark the numba kernels against the pure-numpy fallback.

Runs full epochs (forward + backward + update) at several problem scales
with each backend's kernel set and reports per-epoch times and speedups.

    python benchmarks/bench_kernels.py [--epochs 2000]
"""

import argparse
import time

import numpy as np

from neurotrace.nn import kernels


def epoch_with(k, weights, biases, x, y, lr):
    """One forward/backward/update cycle using kernel set `k`."""
    n_layers = len(weights)
    acts = [x]
    pre = []
    for l in range(n_layers):
        z = k["affine"](acts[-1], weights[l], biases[l])
        pre.append(z)
        acts.append(k["sigmoid"](z) if l < n_layers - 1 else k["softmax_rows"](z))
    delta = acts[-1] - y
    new_w, new_b = [], []
    for l in range(n_layers - 1, -1, -1):
        dw = k["grad_weights"](delta, acts[l])
        db = k["grad_biases"](delta)
        if l > 0:
            delta = k["backprop_delta_sigmoid"](delta, weights[l], acts[l])
        new_w.append(weights[l] - lr * dw)
        new_b.append(biases[l] - lr * db)
    return list(reversed(new_w)), list(reversed(new_b))


def make_problem(rng, n, sizes):
    x = np.ascontiguousarray(rng.uniform(0, 1, (n, sizes[0])))
    y = np.eye(sizes[-1])[rng.integers(sizes[-1], size=n)]
    weights = [
        np.ascontiguousarray(rng.uniform(-0.5, 0.5, (sizes[l + 1], sizes[l])))
        for l in range(len(sizes) - 1)
    ]
    biases = [np.zeros(sizes[l + 1]) for l in range(len(sizes) - 1)]
    return x, y, weights, biases


def bench(kernel_set, x, y, weights, biases, epochs):
    w = [a.copy() for a in weights]
    b = [a.copy() for a in biases]
    epoch_with(kernel_set, w, b, x, y, 0.5)  # warmup (JIT compile)
    start = time.perf_counter()
    for _ in range(epochs):
        w, b = epoch_with(kernel_set, w, b, x, y, 0.5)
    elapsed = time.perf_counter() - start
    checksum = float(sum(a.sum() for a in w))
    return elapsed, checksum


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--epochs", type=int, default=2000)
    args = parser.parse_args()

    if not kernels.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return

    problems = [
        ("iris-scale  n=120  [4,8,3]", 120, (4, 8, 3)),
        ("mid-scale   n=500  [16,32,8]", 500, (16, 32, 8)),
        ("desk-max    n=2000 [32,32,32,10]", 2000, (32, 32, 32, 10)),
    ]
    rng = np.random.default_rng(0)
    print(f"{args.epochs} epochs per measurement\n")
    print(f"{'problem':36} {'numpy':>10} {'numba':>10} {'speedup':>9}")
    for label, n, sizes in problems:
        x, y, weights, biases = make_problem(rng, n, sizes)
        t_np, c_np = bench(kernels.NUMPY_KERNELS, x, y, weights, biases, args.epochs)
        t_nb, c_nb = bench(kernels.NUMBA_KERNELS, x, y, weights, biases, args.epochs)
        drift = abs(c_np - c_nb) / max(abs(c_np), 1e-12)
        print(
            f"{label:36} {t_np:>9.3f}s {t_nb:>9.3f}s {t_np / t_nb:>8.2f}x"
            f"   (result drift {drift:.2e})"
        )


if __name__ == "__main__":
    main()
