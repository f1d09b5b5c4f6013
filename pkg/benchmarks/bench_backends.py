"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the two hot loops (per-consumer simulation, equilibrium sweeps) on
both backends with identical inputs, checks the outputs agree bit for bit,
and prints a timing table.

Usage: python benchmarks/bench_backends.py [--consumers N] [--markets M]
"""

import argparse
import time

import numpy as np

from netlogit import _kernels_py
from netlogit.model import MarketParams

try:
    from netlogit import _kernels
except ImportError:
    _kernels = None


def _rng(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def bench_simulate(backend, consumers, seed=7):
    tau = np.append(np.array([1.0, 0.6, 0.3, 0.1]), 0.0)
    d = np.ones(5, dtype=np.int64)
    rng = _rng(seed)
    t0 = time.perf_counter()
    backend.simulate_consumers(tau, 0.5, d, 0, consumers, 0, rng, False)
    return time.perf_counter() - t0, d


def bench_nash(backend, markets, seed=11):
    rng = _rng(seed)
    zs = []
    t0 = time.perf_counter()
    for _ in range(markets):
        n = int(rng.integers(2, 9))
        params = MarketParams(
            g=rng.uniform(0.0, 3.0, n),
            beta=rng.uniform(0.05, 1.0, n),
            r=float(rng.uniform(0.1, 0.9)),
        )
        a = params.g / (1.0 - params.r)
        z, *_ = backend.nash_sweeps(a, np.ones(n), 1e-10, 100_000)
        zs.append(z)
    return time.perf_counter() - t0, zs


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--consumers", type=int, default=1_000_000)
    parser.add_argument("--markets", type=int, default=200)
    args = parser.parse_args()

    rows = []
    t_py_sim, d_py = bench_simulate(_kernels_py, args.consumers)
    t_py_nash, z_py = bench_nash(_kernels_py, args.markets)
    rows.append(("python", t_py_sim, t_py_nash))
    if _kernels is not None:
        t_c_sim, d_c = bench_simulate(_kernels, args.consumers)
        t_c_nash, z_c = bench_nash(_kernels, args.markets)
        rows.append(("compiled", t_c_sim, t_c_nash))
        assert np.array_equal(d_py, d_c), "backends disagree on simulation counts"
        assert all(np.array_equal(a, b) for a, b in zip(z_py, z_c)), (
            "backends disagree on equilibrium prices"
        )
        print("outputs identical across backends")
    else:
        print("compiled kernels not built; benchmarking the fallback only")

    print(f"\n{'backend':<10} {'simulate (' + str(args.consumers) + ' steps)':<30} "
          f"{'nash (' + str(args.markets) + ' markets)':<24}")
    for name, t_sim, t_nash in rows:
        print(f"{name:<10} {t_sim:>10.3f} s{'':<18} {t_nash:>10.3f} s")
    if len(rows) == 2:
        print(f"\nspeedup: simulate x{rows[0][1] / rows[1][1]:.1f}, "
              f"nash x{rows[0][2] / rows[1][2]:.1f}")


if __name__ == "__main__":
    main()
