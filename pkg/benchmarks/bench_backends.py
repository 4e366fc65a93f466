#!/usr/bin/env python3
"""Compare the numba kernels against the numpy/Python fallback.

Each workload runs in a fresh subprocess so the HYPERFIELD_BACKEND flag can
take effect at import time.  The numba timings exclude JIT compilation (a
warm-up call precedes the timed loop).

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "trace 20 seeds x 1e4 RK4 steps": """
import numpy as np
from hyperfield import kernels
seeds = np.column_stack((np.linspace(2.5, 6.0, 20), np.linspace(0.5, 2.0, 20)))
def work():
    kernels.trace_many(seeds, kernels.KIND_LN_FAMILY, (1.0, 1.0, 0.0),
                       False, 1e-3, 10_000, 1e-9, 1e6)
""",
    "lorentz 2e5 RK4 steps": """
from hyperfield import kernels
def work():
    kernels.lorentz_const_run((0.0, 0.0, 1.0, 0.0), 1.0, 0.4, 1e-4, 200_000)
""",
    "proper-force 2e5 RK4 steps": """
from hyperfield import kernels
def work():
    kernels.force_run((1.0, 0.0), 1.0, 0.8, 1e-4, 200_000)
""",
}

RUNNER = """
import json, time
{setup}
work()  # warm-up (JIT compile on the numba backend)
times = []
for _ in range({repeat}):
    t0 = time.perf_counter()
    work()
    times.append(time.perf_counter() - t0)
print(json.dumps(min(times)))
"""


def run(backend: str, setup: str, repeat: int) -> float:
    env = dict(os.environ, HYPERFIELD_BACKEND=backend)
    proc = subprocess.run(
        [sys.executable, "-c", RUNNER.format(setup=setup, repeat=repeat)],
        capture_output=True,
        text=True,
        env=env,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"{backend} benchmark failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    name_w = max(len(n) for n in WORKLOADS)
    print(f"{'workload':<{name_w}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, setup in WORKLOADS.items():
        t_numba = run("numba", setup, args.repeat)
        t_numpy = run("numpy", setup, args.repeat)
        print(
            f"{name:<{name_w}}  {t_numba * 1e3:>8.2f}ms  {t_numpy * 1e3:>8.2f}ms"
            f"  {t_numpy / t_numba:>7.1f}x"
        )


if __name__ == "__main__":
    main()
