"""Seeded random graph generators for sweeps and tests."""
from __future__ import annotations

import numpy as np

from .graph import Graph


def _from_masks(n, masks):
    return Graph(n, [int(m) for m in masks])


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    masks = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
    return _from_masks(n, masks)


def random_connected_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Random spanning tree (random attachment order) plus G(n, p) edges."""
    masks = list(random_graph(n, p, rng).masks)
    order = rng.permutation(n)
    for i in range(1, n):
        u = int(order[i])
        v = int(order[rng.integers(i)])
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return _from_masks(n, masks)


def random_dense_min_degree(n: int, delta: int, min_edges: int,
                            rng: np.random.Generator, max_tries: int = 100) -> Graph:
    """Connected graph with minimum degree exactly ``delta`` and at least
    ``min_edges`` edges, obtained by deleting random edges from K_n."""
    for _ in range(max_tries):
        masks = [((1 << n) - 1) ^ (1 << v) for v in range(n)]
        deg = [n - 1] * n
        pinned = int(rng.integers(n))
        others = [int(v) for v in rng.permutation(n) if v != pinned]
        for v in others[: n - 1 - delta]:
            masks[pinned] &= ~(1 << v)
            masks[v] &= ~(1 << pinned)
            deg[pinned] -= 1
            deg[v] -= 1
        edges = sum(deg) // 2
        if edges < min_edges:
            raise ValueError(f"cannot reach {min_edges} edges with a degree-{delta} vertex")
        target = int(rng.integers(min_edges, edges + 1))
        candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (masks[u] >> v) & 1]
        for idx in rng.permutation(len(candidates)):
            if edges <= target:
                break
            u, v = candidates[idx]
            if deg[u] > delta and deg[v] > delta:
                masks[u] &= ~(1 << v)
                masks[v] &= ~(1 << u)
                deg[u] -= 1
                deg[v] -= 1
                edges -= 1
        G = _from_masks(n, masks)
        if G.is_connected() and G.min_degree == delta and G.edge_count >= min_edges:
            return G
    raise RuntimeError("no suitable graph found")
