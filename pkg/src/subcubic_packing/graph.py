"""Simple undirected graphs over dense 0-based vertex ids, plus distance utilities."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

INF = math.inf

Edge = tuple[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or inputs outside an operation's domain."""


class DisconnectedGraphError(GraphError):
    def __init__(self, components: list[list[int]]):
        self.components = components
        super().__init__(f"graph is disconnected: components {components}")


class SizeLimitError(GraphError):
    pass


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph.

    Vertices are ``0..n-1``. Neighbour lists are kept sorted and an ``n x n``
    boolean adjacency matrix is stored alongside them.
    """

    __slots__ = ("n", "edges", "adj", "matrix")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        seen: set[Edge] = set()
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            key = _norm(u, v)
            if key in seen:
                raise GraphError(f"parallel edge {key}")
            seen.add(key)
        adj: list[list[int]] = [[] for _ in range(n)]
        matrix = np.zeros((n, n), dtype=bool)
        for u, v in seen:
            adj[u].append(v)
            adj[v].append(u)
            matrix[u, v] = matrix[v, u] = True
        matrix.setflags(write=False)
        self.n = n
        self.edges: frozenset[Edge] = frozenset(seen)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.matrix = matrix

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        """Build from neighbour lists; each edge may be listed from one or both ends."""
        edges = {_norm(u, v) for u, nbrs in enumerate(adj) for v in nbrs}
        return cls(len(adj), edges)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.matrix[u, v])

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        drop = {_norm(*e) for e in removed}
        return Graph(self.n, self.edges - drop)

    def with_edges(self, added: Iterable[Edge]) -> "Graph":
        return Graph(self.n, set(self.edges) | {_norm(*e) for e in added})

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            for u in comp:
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, edges)


@dataclass(frozen=True)
class DistanceOracle:
    """All-pairs hop distances; unreachable pairs hold ``math.inf``."""

    dist: tuple[tuple[float, ...], ...]

    def __call__(self, u: int, v: int) -> float:
        return self.dist[u][v]

    @property
    def n(self) -> int:
        return len(self.dist)

    def max_finite(self) -> int:
        return max((int(d) for row in self.dist for d in row if d != INF), default=0)


def bfs_distances(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = [source]
    for u in queue:
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def distance_oracle(g: Graph) -> DistanceOracle:
    return DistanceOracle(tuple(tuple(bfs_distances(g, s)) for s in range(g.n)))


def power_graph(g: Graph, d: int) -> Graph:
    """Graph on the same vertices with ``u ~ v`` iff ``1 <= dist(u, v) <= d``."""
    if d < 1:
        raise GraphError("power must be at least 1")
    if d == 1:
        return g
    edges = []
    for s in range(g.n):
        ds = bfs_distances(g, s)
        edges.extend((s, t) for t in range(s + 1, g.n) if ds[t] <= d)
    return Graph(g.n, edges)


def find_edge_cuts(g: Graph, max_size: int = 1) -> list[frozenset[Edge]]:
    """Minimal edge cuts with at most ``max_size`` edges (1 or 2).

    A 2-edge set is reported only if neither edge is a bridge on its own, so
    every listed set is inclusion-minimal. Output is sorted by the sorted
    endpoint tuples.
    """
    if max_size not in (1, 2):
        raise GraphError("max_size must be 1 or 2")
    comps = g.components()
    if len(comps) > 1:
        raise DisconnectedGraphError(comps)
    edges = g.sorted_edges()
    bridges = [e for e in edges if not g.without_edges([e]).is_connected()]
    cuts = [frozenset([e]) for e in bridges]
    if max_size == 2:
        bridge_set = set(bridges)
        rest = [e for e in edges if e not in bridge_set]
        for a, b in itertools.combinations(rest, 2):
            if not g.without_edges([a, b]).is_connected():
                cuts.append(frozenset([a, b]))
    cuts.sort(key=lambda c: sorted(c))
    return cuts


def independence_number(g: Graph) -> int:
    """Exact maximum independent set size by branch and bound on bitmasks."""
    if g.n > 32:
        raise SizeLimitError(f"independence number is only computed for n <= 32 (got {g.n})")
    nbr = [sum(1 << w for w in g.adj[v]) for v in range(g.n)]
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if cand == 0:
            best = max(best, size)
            return
        if size + cand.bit_count() <= best:
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~(1 << v) & ~nbr[v], size + 1)
        # skipping v only helps if some neighbour of v can then be taken
        if nbr[v] & cand:
            grow(cand & ~(1 << v), size)

    grow((1 << g.n) - 1, 0)
    return best


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``inf`` for forests."""
    best = INF
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


@dataclass(frozen=True)
class StructureReport:
    max_degree: int
    is_cubic: bool
    diameter: float
    independence_number: int
    girth: float


def structure_report(g: Graph) -> StructureReport:
    oracle = distance_oracle(g)
    diameter = max((d for row in oracle.dist for d in row), default=0)
    return StructureReport(
        max_degree=g.max_degree(),
        is_cubic=g.n > 0 and all(len(a) == 3 for a in g.adj),
        diameter=diameter,
        independence_number=independence_number(g),
        girth=girth(g),
    )


# -- edge-list text format ------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``."""
    tokens = text.split()
    if len(tokens) < 2:
        raise GraphError("edge list must start with 'n m'")
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise GraphError(f"non-integer token in edge list: {exc}") from None
    n, m = values[0], values[1]
    body = values[2:]
    if n < 0 or m < 0:
        raise GraphError("negative header value")
    if len(body) != 2 * m:
        raise GraphError(f"expected {m} edges, found {len(body) / 2:g}")
    return Graph(n, zip(body[0::2], body[1::2]))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return "\n".join(lines) + "\n"
