"""Exact crossing-count distributions by sharded exhaustive enumeration.

The code space of size n^(n-2) is split into contiguous blocks; each block
is tallied by the kernel (decode, count crossings against a precomputed
edge-pair table, bump a counter) and the per-shard tallies are merged by
pointwise addition, so the result does not depend on scheduling.
"""

from __future__ import annotations

import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import kernels
from .errors import GuardError
from .geometry import (
    ConvexConfig,
    PointConfig,
    config_content_hash,
    config_kind,
    max_crossings,
    pair_crossing_table,
)
from .trees import num_trees, shard_bounds

# 10^8 trees and ~3.6e9 pair tests at n = 10; anything larger needs force=True.
ENUMERATION_GUARD = 10


@dataclass(frozen=True)
class CrossingDistribution:
    """Exact map k -> number of labelled trees with k crossings."""

    n: int
    config_kind: str
    counts: dict[int, int]

    def total(self) -> int:
        return sum(self.counts.values())

    def support(self) -> list[int]:
        return sorted(self.counts)

    def as_dense(self) -> list[int]:
        """Counts as a dense list from k = 0 to the largest nonzero k."""
        top = max(self.counts) if self.counts else 0
        return [self.counts.get(k, 0) for k in range(top + 1)]


def distribution_kind(config: PointConfig) -> str:
    """Cache key for the configuration: coordinate configs are keyed by a
    content hash because the distribution depends on more than the
    crossing number."""
    if isinstance(config, ConvexConfig):
        return "convex"
    return f"coordinates:{config_content_hash(config)}"


def exact_distribution(
    config: PointConfig,
    num_shards: int = 4,
    *,
    force: bool = False,
    max_workers: int | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> CrossingDistribution:
    """Enumerate every labelled tree on the configuration and tally exact
    crossing counts.  Deterministic; shards may run on threads.

    Refuses n above the guard unless force is given (the cost grows like
    n^(n-2) trees times C(n-1, 2) pair tests).
    """
    n = config.n
    if num_shards < 1:
        raise ValueError("num_shards must be >= 1")
    if n > ENUMERATION_GUARD and not force:
        trees = num_trees(n)
        raise GuardError(
            f"n={n} means {trees:.2e} trees and ~{trees * max_crossings(n):.1e} "
            f"pair tests; pass force=True (CLI: --force) to run anyway")
    kind = distribution_kind(config)
    if n <= 2:
        return CrossingDistribution(n, kind, {0: 1})
    table, num_edges = pair_crossing_table(config)
    total = num_trees(n)
    bounds = shard_bounds(total, num_shards)
    outs = [np.zeros(max_crossings(n) + 1, dtype=np.int64) for _ in range(num_shards)]

    def run(shard: int) -> None:
        kernels.tally_shard(n, table, num_edges, bounds[shard], bounds[shard + 1],
                            outs[shard])
        if progress is not None:
            progress(shard, num_shards)

    if kernels.BACKEND == "compiled" and num_shards > 1:
        with ThreadPoolExecutor(max_workers=max_workers or num_shards) as pool:
            list(pool.map(run, range(num_shards)))
    else:
        for shard in range(num_shards):
            run(shard)

    merged = np.zeros_like(outs[0])
    for out in outs:
        merged += out
    counts = {k: int(c) for k, c in enumerate(merged) if c}
    dist = CrossingDistribution(n, kind, counts)
    assert dist.total() == total, "enumeration lost trees"
    return dist


def distribution_csv(dist: CrossingDistribution) -> str:
    """Normative export: header 'k,count', rows sorted by k, decimal counts."""
    buf = io.StringIO()
    buf.write("k,count\n")
    for k in dist.support():
        buf.write(f"{k},{dist.counts[k]}\n")
    return buf.getvalue()


def save_distribution_csv(dist: CrossingDistribution, path: str | Path) -> None:
    Path(path).write_text(distribution_csv(dist))
