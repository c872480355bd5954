"""Benchmark the compiled kernel backend against the pure-Python fallback.

Usage:
    python benchmarks/bench_kernels.py [--end-to-end]

The kernel-level section imports both backends directly and times the hot
operations on identical inputs. --end-to-end additionally times a full 2000
sample generation in a subprocess per backend (TRANSCENE_PURE_PYTHON=1
selects the fallback).
"""

import argparse
import os
import random
import subprocess
import sys
import time

import numpy as np

from transcene._kernels import _core_py

try:
    from transcene._kernels import _core
except ImportError:
    _core = None

RADII = np.array([3.0, 4.5, 6.0])
PLANE, VISIBLE, UNIT = 40, 20, 10


def make_cases(n_cases=2000, seed=0):
    rng = random.Random(seed)
    cases = []
    for _ in range(n_cases):
        state = np.empty((10, 6), dtype=np.int32)
        for i in range(10):
            state[i] = [rng.randrange(3), rng.randrange(8), rng.randrange(3), rng.randrange(3),
                        rng.randint(-40, 40), rng.randint(-40, 40)]
        steps = np.empty((4, 2), dtype=np.int32)
        for i in range(4):
            steps[i] = [rng.randrange(10), rng.randrange(33)]
        cases.append((state, steps))
    return cases


def bench(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_kernel_bench():
    cases = make_cases()
    statuses = np.zeros(4, dtype=np.int32)

    def apply_all(mod):
        def _run():
            for state, steps in cases:
                work = state.copy()
                mod.apply_steps(work, steps, True, RADII, PLANE, UNIT, statuses)
        return _run

    def distance_all(mod):
        def _run():
            for i in range(len(cases) - 1):
                mod.scene_distance(cases[i][0], cases[i + 1][0], VISIBLE)
        return _run

    def order_all(mod):
        def _run():
            for state, steps in cases[:400]:
                mod.order_sensitive(state, steps, RADII, PLANE, UNIT)
        return _run

    def collision_all(mod):
        def _run():
            for state, _ in cases:
                for x in range(-20, 21, 5):
                    mod.collision_at(state, 10, -1, x, 0, 4.5, RADII)
        return _run

    ops = [
        ("apply_steps (2000 x 4 steps)", apply_all),
        ("scene_distance (1999 pairs)", distance_all),
        ("order_sensitive (400 x 4 steps)", order_all),
        ("collision_at (2000 x 9 probes)", collision_all),
    ]
    print(f"{'operation':<34} {'pure-python':>12} {'compiled':>12} {'speedup':>9}")
    for name, factory in ops:
        t_py = bench(factory(_core_py))
        if _core is None:
            print(f"{name:<34} {t_py * 1000:>10.1f}ms {'n/a':>12} {'n/a':>9}")
            continue
        t_c = bench(factory(_core))
        print(f"{name:<34} {t_py * 1000:>10.1f}ms {t_c * 1000:>10.1f}ms {t_py / t_c:>8.1f}x")


def run_end_to_end():
    code = (
        "import time, transcene as tc;"
        "t0=time.perf_counter();"
        "tc.Generator(tc.GeneratorConfig(seed=3, split_sizes=(('main',2000),))).generate_splits();"
        "print(f'{time.perf_counter()-t0:.2f}')"
    )
    print("\nend-to-end: generate 2000 event samples")
    for label, env_extra in (("compiled", {}), ("pure-python", {"TRANSCENE_PURE_PYTHON": "1"})):
        env = {**os.environ, **env_extra}
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
        print(f"  {label:<12} {out.stdout.strip()}s")


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args()
    if _core is None:
        print("compiled kernel unavailable; showing fallback timings only")
    run_kernel_bench()
    if args.end_to_end:
        run_end_to_end()
