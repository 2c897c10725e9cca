"""Compare the numba and numpy ball-profile backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Prints wall time per backend for a few grid shapes and checks that both
backends return identical profiles.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from morrey._kernels import HAVE_NUMBA, ball_profile
from morrey.grid import GridDomain

CASES = [((512,), 256), ((2048,), 512), ((48, 48), 34), ((96, 96), 24)]


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    if HAVE_NUMBA:  # compile outside the timed region
        ball_profile(np.ones(8), np.arange(8)[:, None], 3, False, "numba")
        ball_profile(np.ones(8), np.arange(8)[:, None], 3, True, "numba")
    print(f"{'shape':>12} {'kmax':>5} {'p=inf':>6} " + " ".join(f"{b:>10}" for b in backends) + "  same")
    for shape, kmax in CASES:
        dom = GridDomain(shape, 1.0 / shape[0])
        a = rng.random(shape)
        centers = dom.indices()
        for use_max in (False, True):
            results = {}
            times = []
            for b in backends:
                dt, out = _time(lambda: ball_profile(a, centers, kmax, use_max, b), args.repeat)
                results[b] = out
                times.append(dt)
            same = all(np.array_equal(results[backends[0]][0], r[0]) for r in results.values())
            cols = " ".join(f"{t * 1e3:9.1f}ms" for t in times)
            print(f"{str(shape):>12} {kmax:>5} {str(use_max):>6} {cols}  {same}")


if __name__ == "__main__":
    main()
