"""Simple undirected graphs on vertices 0..n-1 with bitmask adjacency."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels

ENUMERATION_CAP = 7


class GraphError(ValueError):
    """Invalid graph input or parameters."""


class BudgetError(RuntimeError):
    """An exhaustive computation would exceed its configured budget."""


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple graph.

    ``masks[v]`` is the neighbourhood of ``v`` as an int bitmask; edge count
    and degrees are computed once at construction.
    """

    __slots__ = ("n", "masks", "degrees", "edge_count", "_edges")

    def __init__(self, n: int, masks: Sequence[int]):
        if n < 0 or len(masks) != n:
            raise GraphError(f"expected {n} adjacency masks, got {len(masks)}")
        full = (1 << n) - 1
        for v, mask in enumerate(masks):
            if mask & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if (mask >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in _bits(mask):
                if not (masks[u] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.masks = tuple(int(m) for m in masks)
        self.degrees = tuple(m.bit_count() for m in self.masks)
        self.edge_count = sum(self.degrees) // 2
        self._edges = None

    @property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(_bits(m)) for m in self.masks)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(_bits(self.masks[v]))

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.masks[u] >> v) & 1)

    @property
    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        if self._edges is None:
            self._edges = [(u, v) for u in range(self.n)
                           for v in _bits(self.masks[u] >> (u + 1) << (u + 1))]
        return list(self._edges)

    @property
    def min_degree(self) -> int:
        return min(self.degrees) if self.n else 0

    def is_connected(self) -> bool:
        return self.n >= 1 and components_after_removal(self, 0).count == 1

    def adjacency_masks(self) -> np.ndarray:
        if self.n > 62:
            raise GraphError("bitmask kernels need n <= 62")
        return np.array(self.masks, dtype=np.int64)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        edges = self.edges
        eu = np.array([u for u, _ in edges], dtype=np.int64)
        ev = np.array([v for _, v in edges], dtype=np.int64)
        return eu, ev

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1.0
        return a

    def signless_laplacian(self) -> np.ndarray:
        return self.adjacency_matrix() + np.diag(np.array(self.degrees, dtype=float))

    def with_edge(self, u: int, v: int) -> Graph:
        masks = list(self.masks)
        masks[u] |= 1 << v
        masks[v] |= 1 << u
        return Graph(self.n, masks)

    def without_edge(self, u: int, v: int) -> Graph:
        masks = list(self.masks)
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
        return Graph(self.n, masks)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.masks == other.masks

    def __hash__(self):
        return hash((self.n, self.masks))

    def __repr__(self):
        return f"Graph(n={self.n}, e={self.edge_count})"


@dataclass(frozen=True)
class VertexSet:
    """Subset of ``range(n)`` stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise GraphError(f"vertex set {self.mask:#x} exceeds range 0..{self.n - 1}")

    @classmethod
    def of(cls, members: Iterable[int], n: int) -> VertexSet:
        mask = 0
        for v in members:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range 0..{n - 1}")
            mask |= 1 << v
        return cls(mask, n)

    @property
    def members(self) -> list[int]:
        return list(_bits(self.mask))

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        return _bits(self.mask)

    def __len__(self):
        return self.size

    def __contains__(self, v):
        return bool((self.mask >> v) & 1)


def as_mask(S, n: int) -> int:
    """Accept a VertexSet, a raw int mask, or an iterable of vertices."""
    if isinstance(S, VertexSet):
        if S.n != n:
            raise GraphError(f"vertex set built for n={S.n}, graph has n={n}")
        return S.mask
    if isinstance(S, (int, np.integer)):
        return VertexSet(int(S), n).mask
    return VertexSet.of(S, n).mask


@dataclass(frozen=True)
class PartitionSpec:
    """Parameters of K_s join (K_{n1} + ... + K_{nt}); parts kept non-increasing."""

    s: int
    parts: tuple[int, ...]

    def __init__(self, s: int, parts: Iterable[int]):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if s < 0:
            raise GraphError(f"apex clique size must be >= 0, got {s}")
        if any(p < 1 for p in parts):
            raise GraphError(f"clique part sizes must be positive, got {parts}")
        object.__setattr__(self, "s", int(s))
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return self.s + sum(self.parts)

    @property
    def t(self) -> int:
        return len(self.parts)


@dataclass(frozen=True)
class ComponentPartition:
    count: int
    # component index per vertex; None for removed vertices
    assignment: tuple = field(default=())


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph from an edge list; duplicate edges collapse, self-loops are errors."""
    if n < 0:
        raise GraphError(f"vertex count must be >= 0, got {n}")
    masks = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return Graph(n, masks)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full ^ (1 << v) for v in range(n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def components_after_removal(G: Graph, S=0) -> ComponentPartition:
    """Components of G - S, labelled in order of their smallest vertex."""
    removed = as_mask(S, G.n)
    remaining = ((1 << G.n) - 1) & ~removed
    assignment: list = [None] * G.n
    count = 0
    while remaining:
        frontier = remaining & -remaining
        remaining ^= frontier
        comp = frontier
        while frontier:
            reach = 0
            for v in _bits(frontier):
                reach |= G.masks[v]
            frontier = reach & remaining
            remaining &= ~frontier
            comp |= frontier
        for v in _bits(comp):
            assignment[v] = count
        count += 1
    return ComponentPartition(count, tuple(assignment))


def cross_edges(G: Graph, A, B) -> int:
    a = as_mask(A, G.n)
    b = as_mask(B, G.n)
    if a & b:
        raise GraphError("cross_edges needs disjoint vertex sets")
    return sum((G.masks[v] & b).bit_count() for v in _bits(a))


def induced_edge_count(G: Graph, S) -> int:
    s = as_mask(S, G.n)
    return sum((G.masks[v] & s).bit_count() for v in _bits(s)) // 2


def build_join_clique_union(spec: PartitionSpec) -> Graph:
    """K_s join (K_{n1} + ... + K_{nt}); apex vertices are 0..s-1, then the parts in order."""
    n = spec.n
    apex = (1 << spec.s) - 1
    masks = [((1 << n) - 1) ^ (1 << v) for v in range(spec.s)]
    start = spec.s
    for size in spec.parts:
        block = ((1 << size) - 1) << start
        masks.extend((apex | block) ^ (1 << v) for v in range(start, start + size))
        start += size
    return Graph(n, masks)


def join_edge_count(spec: PartitionSpec) -> int:
    """Closed form C(s,2) + s(n-s) + sum C(n_i,2)."""
    return comb(spec.s, 2) + spec.s * (spec.n - spec.s) + sum(comb(p, 2) for p in spec.parts)


def check_gstar_params(n: int, delta: int, k: int) -> None:
    if k < 2 or k % 2:
        raise GraphError(f"k must be an even integer >= 2, got {k}")
    if delta < k + 1:
        raise GraphError(f"need delta >= k + 1, got delta={delta}, k={k}")
    if n - (delta - k + 1) * delta - 1 < 1:
        raise GraphError(
            f"need n - (delta-k+1)*delta - 1 >= 1, got {n - (delta - k + 1) * delta - 1}")


def gstar_spec(n: int, delta: int, k: int) -> PartitionSpec:
    check_gstar_params(n, delta, k)
    singles = (delta - k) * delta + 1
    return PartitionSpec(delta, [n - (delta - k + 1) * delta - 1] + [1] * singles)


def build_extremal_gstar(n: int, delta: int, k: int) -> Graph:
    """K_delta join (K_{n-(delta-k+1)delta-1} + ((delta-k)delta+1) K_1)."""
    return build_join_clique_union(gstar_spec(n, delta, k))


def pair_list(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def connected_edge_masks(n: int, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """Edge masks (bit i = i-th pair of :func:`pair_list`) of connected graphs, ascending."""
    if n < 1:
        raise GraphError("enumeration needs n >= 1")
    if n > cap:
        raise BudgetError(f"labeled enumeration capped at n <= {cap}, got n={n}")
    pairs = pair_list(n)
    eu = np.array([u for u, _ in pairs], dtype=np.int64)
    ev = np.array([v for _, v in pairs], dtype=np.int64)
    return kernels.connected_edge_masks(n, eu, ev)


def graph_from_edge_mask(n: int, mask: int, pairs=None) -> Graph:
    pairs = pairs or pair_list(n)
    return build_graph(n, [pairs[i] for i in _bits(int(mask))])


def enumerate_connected_labeled(n: int, cap: int = ENUMERATION_CAP) -> Iterator[Graph]:
    """Every connected labeled graph on n vertices, by ascending edge mask."""
    pairs = pair_list(n)
    for mask in connected_edge_masks(n, cap):
        yield graph_from_edge_mask(n, mask, pairs)


def read_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header plus one ``u v`` line per edge format (0-based)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise GraphError("edge list is empty")
    try:
        n, m = (int(x) for x in lines[0])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, found {len(edges)}")
    return build_graph(n, edges)


def write_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"
