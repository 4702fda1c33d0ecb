#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

The two backends are bit-identical in output (asserted here on every task),
so this measures speed only:

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --enum-n 8 --sample-n 60
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from treecross.geometry import (
    ConvexConfig,
    pair_crossing_table,
    random_general_position_config,
)
from treecross.kernels import get_backend
from treecross.rng import derive_stream_seeds
from treecross.trees import num_trees


def _time(fn) -> float:
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def bench_enumeration(kernel, n: int):
    table, E = pair_crossing_table(ConvexConfig(n))
    out = np.zeros((n - 1) * (n - 2) // 2 + 1, dtype=np.int64)
    secs = _time(lambda: kernel.tally_shard(n, table, E, 0, num_trees(n), out))
    return secs, out


def bench_sampling(kernel, n: int, samples: int):
    out = np.zeros(samples, dtype=np.int64)
    seed = derive_stream_seeds(1234, 1)[0]
    secs = _time(lambda: kernel.sample_stream_convex(n, seed, out, 0, samples))
    return secs, out


def bench_quadruples(kernel, n: int):
    cfg = random_general_position_config(n, seed=5)
    xs = np.array([p[0] for p in cfg.points], dtype=np.int64)
    ys = np.array([p[1] for p in cfg.points], dtype=np.int64)
    result = []
    secs = _time(lambda: result.append(kernel.convex_quadruple_count(xs, ys)))
    return secs, result[0]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--enum-n", type=int, default=7,
                        help="enumerate all n^(n-2) trees (default 7)")
    parser.add_argument("--sample-n", type=int, default=40)
    parser.add_argument("--samples", type=int, default=20000)
    parser.add_argument("--quad-n", type=int, default=50)
    args = parser.parse_args()

    try:
        compiled = get_backend("compiled")
    except ImportError:
        print("compiled kernel not built; nothing to compare")
        return 1
    pure = get_backend("pure")

    tasks = [
        (f"enumerate n={args.enum_n} ({num_trees(args.enum_n):,} trees)",
         lambda k: bench_enumeration(k, args.enum_n)),
        (f"sample n={args.sample_n} ({args.samples:,} trees)",
         lambda k: bench_sampling(k, args.sample_n, args.samples)),
        (f"convex quadruples n={args.quad_n}",
         lambda k: bench_quadruples(k, args.quad_n)),
    ]

    print(f"{'task':44s} {'pure':>10s} {'compiled':>10s} {'speedup':>9s}")
    for name, runner in tasks:
        t_pure, res_pure = runner(pure)
        t_comp, res_comp = runner(compiled)
        if isinstance(res_pure, np.ndarray):
            assert (res_pure == res_comp).all(), "backend outputs differ"
        else:
            assert res_pure == res_comp, "backend outputs differ"
        print(f"{name:44s} {t_pure:9.3f}s {t_comp:9.3f}s {t_pure / t_comp:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
