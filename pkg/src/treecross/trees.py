"""Labelled trees on vertices 1..n: tree codes, enumeration, sampling,
and exact counts of trees containing a fixed forest.

A labelled tree is identified with its edge set.  Trees are in bijection
with label sequences of length n-2 (Cayley: there are n^(n-2) trees), which
gives a deterministic enumeration order and a uniform sampler.  The number
of trees containing a fixed forest has the closed form

    n^(n - |E| - 2) * prod(component sizes)

obtained by double counting rooted tree-building sequences; isolated
vertices count as singleton components and contribute factor 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import InvalidCodeError, InvalidForestError, InvalidTreeError
from .rng import SplitMix64

Edge = tuple[int, int]


def num_trees(n: int) -> int:
    """Number of labelled trees on n vertices (n^(n-2); 1 for n <= 2)."""
    if n < 1:
        raise ValueError("vertex count must be >= 1")
    return 1 if n <= 2 else n ** (n - 2)


def _canonical_edges(edges) -> tuple[Edge, ...]:
    out = []
    for u, v in edges:
        if u == v:
            raise InvalidTreeError(f"self-loop at vertex {u}")
        out.append((u, v) if u < v else (v, u))
    return tuple(sorted(out))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n + 1))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """Merge the two classes; returns False if already joined (cycle)."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


@dataclass(frozen=True)
class PruferCode:
    """Length n-2 label sequence encoding a labelled tree (empty for n <= 2)."""

    n: int
    code: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidCodeError("vertex count must be >= 1")
        object.__setattr__(self, "code", tuple(self.code))
        if len(self.code) != max(self.n - 2, 0):
            raise InvalidCodeError(
                f"code length {len(self.code)} != {max(self.n - 2, 0)} for n={self.n}")
        for entry in self.code:
            if not 1 <= entry <= self.n:
                raise InvalidCodeError(f"code entry {entry} outside 1..{self.n}")


@dataclass(frozen=True)
class LabeledTree:
    """A labelled tree on 1..n, stored as a sorted tuple of (u, v) pairs
    with u < v so equality is structural."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidTreeError("vertex count must be >= 1")
        edges = _canonical_edges(self.edges)
        object.__setattr__(self, "edges", edges)
        if len(edges) != self.n - 1:
            raise InvalidTreeError(
                f"{len(edges)} edges, expected {self.n - 1} for n={self.n}")
        uf = _UnionFind(self.n)
        for u, v in edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidTreeError(f"edge ({u},{v}) outside 1..{self.n}")
            if not uf.union(u, v):
                raise InvalidTreeError(f"cycle through edge ({u},{v})")
        # n-1 successful unions on n vertices imply connectivity

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)


@dataclass(frozen=True)
class Forest:
    """Vertex-disjoint subtrees on an ambient label set 1..n.

    Vertices in no component are implicit singletons: they contribute a
    size-1 factor and are not stored.
    """

    n: int
    components: tuple[tuple[Edge, ...], ...]
    edge_set: frozenset[Edge] = field(init=False, compare=False, repr=False)
    component_sizes: tuple[int, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidForestError("ambient vertex count must be >= 1")
        comps = tuple(_canonical_edges(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        seen: set[int] = set()
        sizes = []
        all_edges: set[Edge] = set()
        for comp in comps:
            if not comp:
                raise InvalidForestError("empty component (isolated vertices are implicit)")
            verts = {u for e in comp for u in e}
            for v in verts:
                if not 1 <= v <= self.n:
                    raise InvalidForestError(f"vertex {v} outside 1..{self.n}")
            if verts & seen:
                raise InvalidForestError(
                    f"components overlap at vertices {sorted(verts & seen)}")
            if len(comp) != len(verts) - 1:
                raise InvalidForestError("component is not a tree (edge count)")
            uf = _UnionFind(self.n)
            for u, v in comp:
                if not uf.union(u, v):
                    raise InvalidForestError(f"cycle through edge ({u},{v})")
            seen |= verts
            sizes.append(len(verts))
            all_edges |= set(comp)
        object.__setattr__(self, "edge_set", frozenset(all_edges))
        object.__setattr__(self, "component_sizes", tuple(sizes))

    @classmethod
    def from_edges(cls, n: int, edges) -> "Forest":
        """Group a flat edge list into connected components."""
        edges = _canonical_edges(edges)
        adj: dict[int, list[int]] = {}
        for u, v in edges:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
        comps = []
        unvisited = set(adj)
        while unvisited:
            start = min(unvisited)
            stack, verts = [start], {start}
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in verts:
                        verts.add(y)
                        stack.append(y)
            unvisited -= verts
            comps.append(tuple(e for e in edges if e[0] in verts))
        return cls(n, tuple(comps))

    @property
    def num_edges(self) -> int:
        return len(self.edge_set)


def _decode_edges(code, n: int) -> list[Edge]:
    """Decode a label sequence into the n-1 edges of its tree.

    Pointer-based linear-time decoding: repeatedly attach the smallest
    remaining leaf to the next code entry; the final edge joins the last
    leaf to vertex n.
    """
    if n == 1:
        return []
    if n == 2:
        return [(1, 2)]
    deg = [1] * (n + 1)
    for c in code:
        deg[c] += 1
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    edges: list[Edge] = []
    for c in code:
        edges.append((leaf, c) if leaf < c else (c, leaf))
        deg[c] -= 1
        if deg[c] == 1 and c < ptr:
            leaf = c
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    edges.append((leaf, n))
    return edges


def prufer_decode(code: PruferCode) -> LabeledTree:
    """The unique labelled tree with the given code. Deterministic."""
    return LabeledTree(code.n, tuple(_decode_edges(code.code, code.n)))


def prufer_encode(tree: LabeledTree) -> PruferCode:
    """Inverse of prufer_decode: repeatedly record the neighbour of the
    smallest leaf until two vertices remain."""
    n = tree.n
    if n <= 2:
        return PruferCode(n, ())
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for u, v in tree.edges:
        adj[u].add(v)
        adj[v].add(u)
    deg = [len(a) for a in adj]
    ptr = 1
    while deg[ptr] != 1:
        ptr += 1
    leaf = ptr
    out = []
    for _ in range(n - 2):
        parent = next(iter(adj[leaf]))
        out.append(parent)
        adj[parent].discard(leaf)
        deg[parent] -= 1
        if deg[parent] == 1 and parent < ptr:
            leaf = parent
        else:
            ptr += 1
            while deg[ptr] != 1:
                ptr += 1
            leaf = ptr
    return PruferCode(n, tuple(out))


def shard_bounds(total: int, num_shards: int) -> list[int]:
    """Near-equal contiguous partition of range(total) into num_shards blocks."""
    if num_shards < 1:
        raise ValueError("num_shards must be >= 1")
    return [total * i // num_shards for i in range(num_shards + 1)]


def code_at_index(index: int, n: int) -> tuple[int, ...]:
    """The index-th code in lexicographic order (big-endian base-n digits)."""
    length = max(n - 2, 0)
    digits = [1] * length
    for pos in range(length - 1, -1, -1):
        index, d = divmod(index, n)
        digits[pos] = d + 1
    return tuple(digits)


def enumerate_trees(n: int, shard: int = 0, num_shards: int = 1) -> Iterator[LabeledTree]:
    """Stream the labelled trees on 1..n in code order.

    The union over all shards yields each of the n^(n-2) trees exactly once;
    shards are contiguous lexicographic blocks of near-equal size.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0 <= shard < num_shards:
        raise ValueError(f"shard {shard} outside 0..{num_shards - 1}")
    bounds = shard_bounds(num_trees(n), num_shards)
    start, stop = bounds[shard], bounds[shard + 1]
    if start >= stop:
        return
    if n <= 2:
        yield LabeledTree(n, () if n == 1 else ((1, 2),))
        return
    digits = list(code_at_index(start, n))
    for _ in range(stop - start):
        yield LabeledTree(n, tuple(_decode_edges(digits, n)))
        pos = n - 3
        while pos >= 0:
            digits[pos] += 1
            if digits[pos] <= n:
                break
            digits[pos] = 1
            pos -= 1


def sample_tree(n: int, rng: SplitMix64 | int) -> LabeledTree:
    """Uniform labelled tree on 1..n: n-2 rejection-sampled uniform labels,
    decoded. Identical seed gives an identical tree."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if isinstance(rng, int):
        rng = SplitMix64(rng)
    if n <= 2:
        return LabeledTree(n, () if n == 1 else ((1, 2),))
    code = tuple(rng.uniform_label(n) for _ in range(n - 2))
    return LabeledTree(n, tuple(_decode_edges(code, n)))


def contains_forest(tree: LabeledTree, forest: Forest) -> bool:
    """True iff every forest edge is an edge of the tree."""
    if tree.n != forest.n:
        raise ValueError(f"ambient size mismatch: tree n={tree.n}, forest n={forest.n}")
    return forest.edge_set <= tree.edge_set()


def count_trees_containing(n: int, forest: Forest) -> int:
    """Exact number of labelled trees on 1..n containing the forest."""
    if forest.n != n:
        raise ValueError(f"ambient size mismatch: n={n}, forest n={forest.n}")
    k = forest.num_edges
    if k == n - 1:
        return 1  # the forest is itself a spanning tree
    if n == 1:
        return 1  # only the empty forest is representable
    prod = 1
    for size in forest.component_sizes:
        prod *= size
    return n ** (n - k - 2) * prod


def forest_probability(n: int, forest: Forest) -> Fraction:
    """Probability that a uniform labelled tree contains the forest,
    as an exact rational: count / n^(n-2) = n^(-|E|) * prod(sizes)."""
    return Fraction(count_trees_containing(n, forest), num_trees(n))
