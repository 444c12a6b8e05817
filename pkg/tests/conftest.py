import itertools
import random

import networkx as nx
import pytest

from subcubic_packing.config import Configuration
from subcubic_packing.graph import Graph


def random_subcubic(rng: random.Random, n: int, tries: int = 3) -> Graph:
    """Random graph with max degree 3: shuffle all pairs and keep what fits."""
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    target = rng.randint(0, (3 * n) // 2)
    for u, v in pairs:
        if len(edges) >= target:
            break
        if deg[u] < 3 and deg[v] < 3:
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def nx_distances(g: Graph) -> dict:
    return dict(nx.all_pairs_shortest_path_length(to_nx(g)))


def brute_colorable(g: Graph, radii, partial=None) -> bool:
    """Plain product enumeration over every completion; for tiny graphs."""
    dist = nx_distances(g)
    partial = list(partial) if partial is not None else [0] * g.n
    free = [v for v in range(g.n) if partial[v] == 0]
    k = len(radii)
    for choice in itertools.product(range(1, k + 1), repeat=len(free)):
        col = list(partial)
        for v, c in zip(free, choice):
            col[v] = c
        if all(col[u] != col[v] or dist[u].get(v, 10**9) > radii[col[u] - 1]
               for u in range(g.n) for v in range(u + 1, g.n)):
            return True
    return False


def backtrack_colorable(g: Graph, radii, partial) -> bool:
    """Depth-first completion with distances from networkx. Independent of
    the package's conflict tables; used where plain enumeration is too big."""
    dist = nx_distances(g)
    col = list(partial)
    free = [v for v in range(g.n) if col[v] == 0]

    def ok(v, c):
        r = radii[c - 1]
        return all(col[u] != c or u == v or dist[v].get(u, 10**9) > r for u in range(g.n))

    def go(i):
        if i == len(free):
            return True
        v = free[i]
        for c in range(1, len(radii) + 1):
            if ok(v, c):
                col[v] = c
                if go(i + 1):
                    return True
                col[v] = 0
        return False

    return go(0)


def random_config(rng: random.Random, n_max: int = 12, t_max: int = 2, name: str = "synthetic") -> Configuration:
    """Small configuration: T pendant triples (boundary adjacent to both
    pendants), a random core, and a few extra edges among the triple
    vertices."""
    T = rng.randint(0, t_max)
    # "tight" records have only a few free vertices packed against the
    # triples, which is where non-extendable precolourings show up
    tight = rng.random() < 0.5
    lo = max(3 * T, 1)
    n = rng.randint(lo, min(n_max, lo + 3)) if tight else rng.randint(lo, n_max)
    edges = set()
    deg = [0] * n
    # tight records may break subcubicity; the checker does not rely on it
    limit = rng.choice([3, 4, 5]) if tight else 3

    def add(u, v, cap=limit):
        if u != v and (min(u, v), max(u, v)) not in edges and deg[u] < cap and deg[v] < cap:
            edges.add((min(u, v), max(u, v)))
            deg[u] += 1
            deg[v] += 1

    verts = list(range(n))
    rng.shuffle(verts)
    triples = [tuple(verts[3 * i:3 * i + 3]) for i in range(T)]
    for b, p1, p2 in triples:
        add(b, p1)
        add(b, p2)
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    for u, v in pairs[: (3 * n if tight else rng.randint(0, 2 * n))]:
        add(u, v)
    base = Graph(n, edges)
    extra_edges = set(edges)
    flat = [x for t in triples for x in t]
    for _ in range(rng.randint(0, 2)):
        if len(flat) >= 2:
            u, v = rng.sample(flat, 2)
            extra_edges.add((min(u, v), max(u, v)))
    return Configuration(name, base, Graph(n, extra_edges), tuple(triples))


@pytest.fixture
def rng():
    return random.Random(12345)
