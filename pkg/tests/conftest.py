"""Shared test helpers: brute-force oracles kept deliberately independent
of the kernel code paths they are used to check."""

from __future__ import annotations

from collections import Counter
from itertools import combinations

import pytest

from treecross import ConvexConfig, exact_distribution
from treecross.distributions import CrossingDistribution
from treecross.geometry import PointConfig, edges_cross
from treecross.trees import Forest, LabeledTree, enumerate_trees


def brute_force_distribution(config: PointConfig) -> dict[int, int]:
    """Crossing-count histogram by walking every tree with the pure
    tree/geometry operations (no kernel, no pair table)."""
    counts: Counter[int] = Counter()
    for tree in enumerate_trees(config.n):
        k = 0
        for e1, e2 in combinations(tree.edges, 2):
            if edges_cross(e1, e2, config):
                k += 1
        counts[k] += 1
    return dict(counts)


def all_forests(n: int):
    """Every forest on 1..n (each acyclic subset of the edge set), as a
    Forest.  Exponential in C(n,2); fine for n <= 6."""
    edges = list(combinations(range(1, n + 1), 2))
    for bits in range(1 << len(edges)):
        subset = [edges[i] for i in range(len(edges)) if bits >> i & 1]
        parent = list(range(n + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            yield Forest.from_edges(n, subset)


def count_by_containment(n: int, forest: Forest, tree_edge_sets) -> int:
    fe = forest.edge_set
    return sum(1 for te in tree_edge_sets if fe <= te)


@pytest.fixture(scope="session")
def tree_edge_sets_by_n():
    """Cached frozensets of tree edges for brute-force containment counts."""
    cache: dict[int, list[frozenset]] = {}

    def get(n: int):
        if n not in cache:
            cache[n] = [t.edge_set() for t in enumerate_trees(n)]
        return cache[n]

    return get


@pytest.fixture(scope="session")
def convex_dist():
    """Session cache of exact convex distributions (n=10 takes seconds)."""
    cache: dict[int, CrossingDistribution] = {}

    def get(n: int) -> CrossingDistribution:
        if n not in cache:
            cache[n] = exact_distribution(ConvexConfig(n))
        return cache[n]

    return get
