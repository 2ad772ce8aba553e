#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends on the two hot
paths: group closure and k-tuple orbit partitioning.

Each backend runs in its own subprocess (the backend is chosen at
import time via KORBITS_BACKEND), with one warm-up pass so numba's JIT
compilation is not billed to the measurement.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json
import sys
import time

import numpy as np

from korbits import _backend
from korbits.group import symmetric_group, dihedral_group

repeat = int(sys.argv[1])


def bench(fn, *args):
    fn(*args)                      # warm-up (JIT + caches)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


results = {"backend": _backend.BACKEND}

s7_gens = np.array([[1, 0, 2, 3, 4, 5, 6],
                    [1, 2, 3, 4, 5, 6, 0]], dtype=np.int64)
results["closure_S7"] = bench(
    _backend.closure_images, s7_gens, 7, 10 ** 6)

d8 = dihedral_group(8)
results["closure_D8"] = bench(
    _backend.closure_images,
    np.array([[v - 1 for v in g.images] for g in d8.generators],
             dtype=np.int64), 8, 10 ** 6)

s7 = symmetric_group(7)
results["tuple_orbits_S7_k4"] = bench(
    _backend.tuple_orbits, s7.images, 4, 10 ** 7)
results["tuple_orbits_D8_k5"] = bench(
    _backend.tuple_orbits, d8.images, 5, 10 ** 7)

print(json.dumps(results))
"""


def run_backend(backend, repeat):
    env = dict(os.environ, KORBITS_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", WORKER, str(repeat)],
                         capture_output=True, text=True, env=env)
    if res.returncode != 0:
        sys.stderr.write(res.stderr)
        raise SystemExit(f"{backend} worker failed")
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5,
                    help="timed repetitions per case (best is reported)")
    args = ap.parse_args()

    rows = [run_backend(b, args.repeat) for b in ("numba", "numpy")]
    cases = [k for k in rows[0] if k != "backend"]

    print(f"{'case':24} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    print("-" * 60)
    for case in cases:
        a, b = rows[0][case], rows[1][case]
        print(f"{case:24} {a * 1e3:>10.2f}ms {b * 1e3:>10.2f}ms "
              f"{b / a:>8.1f}x")


if __name__ == "__main__":
    main()
