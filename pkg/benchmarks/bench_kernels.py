"""Compare the numba and numpy kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each case is run once untimed (JIT compilation, caches), then timed
``--repeat`` times; the best time is reported together with the largest
relative difference between the two backends' outputs.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from crowns.kernels import _jit, _numpy
from crowns.rootkit import geometric_grid


def _best(fn, repeat):
    fn()
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _reldiff(u, v):
    u, v = np.atleast_1d(np.asarray(u, float)), np.atleast_1d(np.asarray(v, float))
    scale = np.maximum(np.abs(u), 1e-300)
    return float(np.max(np.abs(u - v) / scale))


def _positions(n):
    k = np.arange(n)
    ang = np.concatenate([2 * np.pi * k / n, np.pi / n + 2 * np.pi * k / n])
    r = np.concatenate([np.ones(n), np.full(n, 1.3)])
    m = np.concatenate([np.ones(n), np.full(n, 2.0)])
    return r * np.cos(ang), r * np.sin(ang), m


def cases():
    scan = geometric_grid(1e-4, 1e4, 40001)
    yield "twisted_grid n=100 (40001 pts)", lambda b: b.twisted_grid(100, scan, False)
    yield "twisted_grid n=5000 (40001 pts)", lambda b: b.twisted_grid(5000, scan, False)
    yield "twisted_grid n=10 full (40001 pts)", lambda b: b.twisted_grid(10, scan, True)
    yield "twisted_sums n=5000 (x50)", lambda b: [b.twisted_sums(5000, 1.0 + 1e-3 * i)
                                                  for i in range(50)]
    x, y, m = _positions(500)
    yield "pair_accel 1000 bodies", lambda b: b.pair_accel(x, y, m)[:2]


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    print(f"{'case':38s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s} {'max rel diff':>13s}")
    for name, fn in cases():
        tj = _best(lambda: fn(_jit), args.repeat)
        tn = _best(lambda: fn(_numpy), args.repeat)
        rj, rn = fn(_jit), fn(_numpy)
        if isinstance(rj, list):
            rj, rn = np.stack(rj), np.stack(rn)
        elif isinstance(rj, tuple):
            rj, rn = np.concatenate(rj), np.concatenate(rn)
        print(f"{name:38s} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f} {_reldiff(rn, rj):13.2e}")


if __name__ == "__main__":
    main()
