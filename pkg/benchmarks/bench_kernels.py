"""Benchmark the grid-solver stepping kernels: compiled vs NumPy fallback.

Runs the reference breaking-experiment state through both backends and
reports steps/second plus the speedup, for a few grid sizes.

    python3 benchmarks/bench_kernels.py [--steps 2000] [--sizes 1000,4000,16000]
"""
import argparse
import time

import numpy as np

from coldplasma import eulerian
from coldplasma.eulerian import backend


def time_backend(kernels, n, steps):
    config = eulerian.SimulationConfig(grid_points=n, theta_max=1.0)
    state = eulerian.init_gaussian(2.07, 3.0, config.grid())
    P, E = state.P.copy(), state.E.copy()
    h = state.h
    dt = 0.5 * h
    # warm up (JIT-free, but touches caches and import paths)
    kernels.advance(P, E, h, dt, True, False, 0.01)
    t0 = time.perf_counter()
    for _ in range(steps):
        kernels.advance(P, E, h, dt, True, False, 0.01)
    elapsed = time.perf_counter() - t0
    assert np.all(np.isfinite(P))
    return steps / elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=2000)
    parser.add_argument("--sizes", default="1000,4000,16000")
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    names = eulerian.available_backends()
    print(f"available backends: {names} (active: {eulerian.active_backend()})")
    print(f"{'grid':>8} " + " ".join(f"{name + ' steps/s':>16}" for name in names)
          + f" {'speedup':>9}")
    for n in sizes:
        rates = {name: time_backend(backend.get_kernels(name), n, args.steps)
                 for name in names}
        speedup = (rates.get("cython", 0.0) / rates["python"]
                   if "cython" in rates else float("nan"))
        print(f"{n:>8} " + " ".join(f"{rates[name]:>16.0f}" for name in names)
              + f" {speedup:>8.1f}x")


if __name__ == "__main__":
    main()
