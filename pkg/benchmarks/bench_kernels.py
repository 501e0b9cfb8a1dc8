"""Compare the numba and numpy kernel backends on real Cayley tables.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--rings Z:64 M:2:Z:2 M:2:Z:3]

Prints one line per (ring, kernel) with the best-of-N time for each backend
and the speedup. Outputs of both backends are compared before timing.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from geninv import kernels
from geninv._jit import HAVE_NUMBA
from geninv.syntax import parse_ring
from geninv.tables import tables_for

KERNELS = {
    "unit_inverses": lambda t, b: kernels.unit_inverses(t.mul, t.one, backend=b),
    "first_inner": lambda t, b: kernels.first_inner(t.mul, backend=b),
    "ideal_matrices": lambda t, b: kernels.ideal_matrices(t.mul, backend=b),
    "along_table": lambda t, b: kernels.along_table(t.mul, backend=b),
}


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def same(x, y):
    xs = x if isinstance(x, tuple) else (x,)
    ys = y if isinstance(y, tuple) else (y,)
    return all(np.array_equal(a, b) for a, b in zip(xs, ys))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--rings", nargs="+", default=["Z:64", "M:2:Z:2", "M:2:Z:3", "M:2:Z:4"])
    args = ap.parse_args(argv)
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'ring':<10} {'n':>5} {'kernel':<15} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for spec in args.rings:
        t = tables_for(parse_ring(spec))
        for name, run in KERNELS.items():
            a, b = run(t, "numba"), run(t, "numpy")  # also warms up the JIT
            if not same(a, b):
                raise SystemExit(f"backends disagree on {name} for {spec}")
            jit = best_of(lambda: run(t, "numba"), args.repeat)
            npy = best_of(lambda: run(t, "numpy"), args.repeat)
            print(f"{spec:<10} {t.size:>5} {name:<15} {jit:>10.5f} {npy:>10.5f} {npy / jit:>7.1f}x")


if __name__ == "__main__":
    main()
