"""Shared graph builders and independent oracles for the test suite."""

from __future__ import annotations

from collections import deque

import numpy as np
import pytest

from qmix import WeightClass, WeightedGraph


def complete(n):
    return WeightedGraph.build(n, [(i, j, 1) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return WeightedGraph.build(n, [(i, i + 1, 1) for i in range(n - 1)])


def cycle(n):
    return WeightedGraph.build(n, [(i, (i + 1) % n, 1) for i in range(n)])


def star(n):
    """K_{1, n-1} with the center at vertex 0."""
    return WeightedGraph.build(n, [(0, i, 1) for i in range(1, n)])


def cube_q3():
    edges = []
    for v in range(8):
        for b in (1, 2, 4):
            if v < v ^ b:
                edges.append((v, v ^ b, 1))
    return WeightedGraph.build(8, edges)


def complete_bipartite(p, q):
    return WeightedGraph.build(p + q, [(i, p + j, 1) for i in range(p) for j in range(q)])


def random_tree(rng, n):
    edges = [(int(rng.integers(0, v)), v, 1) for v in range(1, n)]
    return WeightedGraph.build(n, edges)


def random_connected_graph(rng, n, weight_class=WeightClass.UNIT, extra_edges=None):
    """Random spanning tree plus extra edges; weights drawn per class."""
    base = [(int(rng.integers(0, v)), v) for v in range(1, n)]
    present = set(base)
    if extra_edges is None:
        extra_edges = int(rng.integers(0, max(1, n)))
    candidates = [(i, j) for i in range(n) for j in range(i + 1, n) if (i, j) not in present]
    rng.shuffle(candidates)
    pairs = base + candidates[:extra_edges]

    def weight():
        if weight_class is WeightClass.UNIT:
            return 1
        if weight_class is WeightClass.INTEGER:
            return int(rng.integers(1, 6))
        return float(rng.uniform(0.5, 2.5))

    return WeightedGraph.build(n, [(u, v, weight()) for u, v in pairs], weight_class)


# ---------------------------------------------------------------------------
# Independent oracles (no qmix internals)

def bfs_distances(g: WeightedGraph, source: int) -> list[int]:
    adj = [[] for _ in range(g.n)]
    for u, v, _ in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] == -1:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def count_distance_two_pairs(g: WeightedGraph) -> int:
    return sum(1 for u in range(g.n)
               for v, d in enumerate(bfs_distances(g, u)) if v > u and d == 2)


def star_projectors(n):
    """Closed-form adjacency eigenprojectors of K_{1, n-1} (center first):
    eigenvalues -sqrt(n-1), 0, sqrt(n-1)."""
    m = n - 1
    root = np.sqrt(m)
    v_plus = np.concatenate(([root], np.ones(m))) / np.sqrt(2 * m)
    v_minus = np.concatenate(([-root], np.ones(m))) / np.sqrt(2 * m)
    e_zero = np.zeros((n, n))
    e_zero[1:, 1:] = np.eye(m) - np.ones((m, m)) / m
    return {-root: np.outer(v_minus, v_minus), 0.0: e_zero, root: np.outer(v_plus, v_plus)}


def complete_projectors(n):
    """Closed-form adjacency eigenprojectors of K_n: eigenvalues n-1 and -1."""
    j = np.ones((n, n)) / n
    return {float(n - 1): j, -1.0: np.eye(n) - j}


def naive_twin_subgraph_check(g: WeightedGraph, gs, hs, f, kind: str) -> bool:
    """Definition-level twin subgraph check, written independently of qmix."""
    a = np.zeros((g.n, g.n))
    for u, v, w in g.edges:
        a[u, v] = a[v, u] = w
    outside = [w for w in range(g.n) if w not in set(gs) | set(hs)]
    if any(a[x, w] != a[f[x], w] for x in gs for w in outside):
        return False
    if kind == "false":
        if any(a[x, y] != 0 for x in gs for y in hs):
            return False
        return all(a[x1, x2] == a[f[x1], f[x2]] for x1 in gs for x2 in gs if x1 != x2)
    gset, hset = set(gs), set(hs)
    in_g = [sum(a[x, y] for y in gset) for x in gs]
    in_h = [sum(a[x, y] for y in hset) for x in hs]
    cross = [sum(a[x, y] for y in hset) for x in gs] + [sum(a[y, x] for x in gset) for y in hs]
    return len(set(in_g + in_h)) == 1 and len(set(cross)) == 1


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
