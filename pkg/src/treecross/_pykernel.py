"""Pure-Python kernel: reference implementation of the hot loops.

This is the fallback used when the compiled extension (treecross._native)
is unavailable.  Both kernels implement exactly the same algorithms and
the same generator, so all outputs are bit-identical; only speed differs.
See benchmarks/bench_kernels.py for the comparison.
"""

from __future__ import annotations

import numpy as np

from .errors import GeneralPositionError
from .rng import MASK64, SplitMix64

BACKEND = "pure"


def _rowbase(n: int) -> list[int]:
    # edge_index(u, v, n) == rowbase[u] + v for u < v
    return [0] + [(u - 1) * n - u * (u - 1) // 2 - u - 1 for u in range(1, n + 1)]


def tally_shard(n: int, pair_table: np.ndarray, num_edges: int,
                start: int, stop: int, out: np.ndarray) -> None:
    """Add, into out[k], the number of trees with k crossings among the
    codes with lexicographic index in [start, stop)."""
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    length = n - 2
    digits = [0] * length
    idx = start
    for pos in range(length - 1, -1, -1):
        idx, d = divmod(idx, n)
        digits[pos] = d + 1
    table = pair_table.tolist()
    rowbase = _rowbase(n)
    E = num_edges
    deg = [0] * (n + 1)
    eids = [0] * (n - 1)
    tally = [0] * len(out)
    for _ in range(stop - start):
        for v in range(1, n + 1):
            deg[v] = 1
        for c in digits:
            deg[c] += 1
        ptr = 1
        while deg[ptr] != 1:
            ptr += 1
        leaf = ptr
        m = 0
        for c in digits:
            eids[m] = rowbase[leaf] + c if leaf < c else rowbase[c] + leaf
            m += 1
            deg[c] -= 1
            if deg[c] == 1 and c < ptr:
                leaf = c
            else:
                ptr += 1
                while deg[ptr] != 1:
                    ptr += 1
                leaf = ptr
        eids[m] = rowbase[leaf] + n
        k = 0
        for i in range(n - 1):
            base = eids[i] * E
            for j in range(i + 1, n - 1):
                k += table[base + eids[j]]
        tally[k] += 1
        pos = length - 1
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] <= n:
                break
            digits[pos] = 1
            pos -= 1
    out += np.asarray(tally, dtype=np.int64)


def _sample_code(gen: SplitMix64, n: int, length: int) -> list[int]:
    return [gen.uniform_label(n) for _ in range(length)]


def _decode_packed(code: list[int], n: int, deg: list[int], packed: list[int]) -> None:
    # packed[i] = (u << 16) | v with u < v, labels fit in 16 bits
    for v in range(1, n + 1):
        deg[v] = 1
    for c in code:
        deg[c] += 1
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    m = 0
    for c in code:
        packed[m] = (leaf << 16) | c if leaf < c else (c << 16) | leaf
        m += 1
        deg[c] -= 1
        if deg[c] == 1 and c < ptr:
            leaf = c
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    packed[m] = (leaf << 16) | n


def sample_stream_convex(n: int, stream_seed: int, out: np.ndarray,
                         lo: int, hi: int) -> None:
    """Fill out[lo:hi] with crossing counts of uniformly sampled trees on
    n labels in convex position."""
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    gen = SplitMix64(stream_seed & MASK64)
    length = n - 2
    deg = [0] * (n + 1)
    packed = [0] * (n - 1)
    for s in range(lo, hi):
        code = _sample_code(gen, n, length)
        _decode_packed(code, n, deg, packed)
        k = 0
        for i in range(n - 1):
            a = packed[i] >> 16
            b = packed[i] & 0xFFFF
            for j in range(i + 1, n - 1):
                c = packed[j] >> 16
                d = packed[j] & 0xFFFF
                if a == c or a == d or b == c or b == d:
                    continue
                if (a < c < b) != (a < d < b):
                    k += 1
        out[s] = k


def _sign(v: int) -> int:
    return (v > 0) - (v < 0)


def sample_stream_coords(xs: np.ndarray, ys: np.ndarray, stream_seed: int,
                         out: np.ndarray, lo: int, hi: int) -> None:
    """Coordinate variant of sample_stream_convex: crossings decided by
    exact orientation signs (input must be in general position)."""
    n = len(xs)
    if n < 3:
        raise ValueError("kernel requires n >= 3")
    x = xs.tolist()
    y = ys.tolist()
    gen = SplitMix64(stream_seed & MASK64)
    length = n - 2
    deg = [0] * (n + 1)
    packed = [0] * (n - 1)
    for s in range(lo, hi):
        code = _sample_code(gen, n, length)
        _decode_packed(code, n, deg, packed)
        k = 0
        for i in range(n - 1):
            a = (packed[i] >> 16) - 1
            b = (packed[i] & 0xFFFF) - 1
            ax, ay, bx, by = x[a], y[a], x[b], y[b]
            for j in range(i + 1, n - 1):
                c = (packed[j] >> 16) - 1
                d = (packed[j] & 0xFFFF) - 1
                if a == c or a == d or b == c or b == d:
                    continue
                cx, cy, dx, dy = x[c], y[c], x[d], y[d]
                d1 = _sign((dx - cx) * (ay - cy) - (dy - cy) * (ax - cx))
                d2 = _sign((dx - cx) * (by - cy) - (dy - cy) * (bx - cx))
                if d1 == d2:
                    continue
                d3 = _sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))
                d4 = _sign((bx - ax) * (dy - ay) - (by - ay) * (dx - ax))
                if d3 != d4:
                    k += 1
        out[s] = k


def convex_quadruple_count(xs: np.ndarray, ys: np.ndarray) -> int:
    """Number of 4-point subsets in convex position.

    A quadruple is convex iff an even number of its four ordered triples
    turn counterclockwise; an odd count means one point lies inside the
    triangle of the others.  A zero determinant is a collinear triple.
    """
    n = len(xs)
    x = xs.tolist()
    y = ys.tolist()
    total = 0
    for a in range(n):
        for b in range(a + 1, n):
            abx = x[b] - x[a]
            aby = y[b] - y[a]
            for c in range(b + 1, n):
                o1 = abx * (y[c] - y[a]) - aby * (x[c] - x[a])
                if o1 == 0:
                    raise GeneralPositionError(
                        f"points {a + 1}, {b + 1}, {c + 1} are collinear")
                for d in range(c + 1, n):
                    o2 = abx * (y[d] - y[a]) - aby * (x[d] - x[a])
                    o3 = (x[c] - x[a]) * (y[d] - y[a]) - (y[c] - y[a]) * (x[d] - x[a])
                    o4 = (x[c] - x[b]) * (y[d] - y[b]) - (y[c] - y[b]) * (x[d] - x[b])
                    if o2 == 0 or o3 == 0 or o4 == 0:
                        raise GeneralPositionError(
                            f"a collinear triple lies in {a + 1}, {b + 1}, {c + 1}, {d + 1}")
                    parity = (o1 > 0) + (o2 > 0) + (o3 > 0) + (o4 > 0)
                    if parity % 2 == 0:
                        total += 1
    return total


def find_collinear_triple(xs: np.ndarray, ys: np.ndarray):
    """First collinear label triple (1-based) in lexicographic order, or None."""
    n = len(xs)
    x = xs.tolist()
    y = ys.tolist()
    for a in range(n):
        for b in range(a + 1, n):
            abx = x[b] - x[a]
            aby = y[b] - y[a]
            for c in range(b + 1, n):
                if abx * (y[c] - y[a]) - aby * (x[c] - x[a]) == 0:
                    return (a + 1, b + 1, c + 1)
    return None
