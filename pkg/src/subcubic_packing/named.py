"""Named graphs, configurations and planar rotation systems."""

from __future__ import annotations

import itertools
import math
import re
from typing import Callable

from .config import Configuration
from .graph import Graph, GraphError


class UnknownNameError(KeyError):
    pass


def petersen() -> Graph:
    # outer 5-cycle 0..4, spokes i -> i+5, inner pentagram 5-7-9-6-8-5
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"a cycle needs at least 3 vertices, got {n}")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"negative order {n}")
    return Graph(n, itertools.combinations(range(n), 2))


# v1..v7 of the gadget become 0..6; v1 (vertex 0) is the degree-2 vertex.
_GADGET_ADJ = {1: (2, 4), 2: (1, 3, 7), 3: (2, 7, 6), 4: (1, 5, 6), 5: (4, 6, 7), 6: (3, 4, 5), 7: (2, 3, 5)}
GADGET_V1 = 0


def sharpness_gadget() -> Graph:
    return Graph(7, [(a - 1, b - 1) for a, nbrs in _GADGET_ADJ.items() for b in nbrs if a < b])


def sharpness_doubled() -> Graph:
    g = sharpness_gadget()
    edges = list(g.edges) + [(u + 7, v + 7) for u, v in g.edges] + [(GADGET_V1, GADGET_V1 + 7)]
    return Graph(14, edges)


def _placed(points: dict[str, tuple[float, float]], names: list[str], pairs) -> tuple[Graph, list[list[int]]]:
    index = {name: i for i, name in enumerate(names)}
    g = Graph(len(names), [(index[a], index[b]) for a, b in pairs])
    rot = []
    for v, name in enumerate(names):
        x0, y0 = points[name]
        rot.append(sorted(g.adj[v], key=lambda u: math.atan2(points[names[u]][1] - y0, points[names[u]][0] - x0)))
    return g, rot


def _polar(r: float, deg: float) -> tuple[float, float]:
    return (r * math.cos(math.radians(deg)), r * math.sin(math.radians(deg)))


def _k4_drawing():
    names = ["a", "b", "c", "o"]
    pts = {"a": _polar(4, 90), "b": _polar(4, 210), "c": _polar(4, 330), "o": (0.0, 0.0)}
    return names, pts, list(itertools.combinations(names, 2))


def _cube_drawing():
    names = [f"o{i}" for i in range(4)] + [f"i{i}" for i in range(4)]
    pts = {f"o{i}": _polar(2, 45 + 90 * i) for i in range(4)}
    pts.update({f"i{i}": _polar(1, 45 + 90 * i) for i in range(4)})
    pairs = [(f"o{i}", f"o{(i + 1) % 4}") for i in range(4)]
    pairs += [(f"i{i}", f"i{(i + 1) % 4}") for i in range(4)]
    pairs += [(f"o{i}", f"i{i}") for i in range(4)]
    return names, pts, pairs


def _dodecahedron_drawing():
    names = [f"{ring}{i}" for ring in "abcd" for i in range(5)]
    pts = {}
    for i in range(5):
        pts[f"a{i}"] = _polar(4, 90 + 72 * i)
        pts[f"b{i}"] = _polar(3, 90 + 72 * i)
        pts[f"c{i}"] = _polar(2, 90 + 72 * i + 36)
        pts[f"d{i}"] = _polar(1, 90 + 72 * i + 36)
    pairs = []
    for i in range(5):
        j = (i + 1) % 5
        pairs += [(f"a{i}", f"a{j}"), (f"a{i}", f"b{i}"), (f"b{i}", f"c{i}"),
                  (f"c{i}", f"b{j}"), (f"c{i}", f"d{i}"), (f"d{i}", f"d{j}")]
    return names, pts, pairs


def _truncated_tetrahedron_drawing():
    k_names, k_pts, k_pairs = _k4_drawing()
    names, pts, pairs = [], {}, []
    for v in k_names:
        for u in k_names:
            if u == v:
                continue
            name = f"{v}>{u}"
            names.append(name)
            (xv, yv), (xu, yu) = k_pts[v], k_pts[u]
            # cut every corner at the same distance so each cut is a small
            # triangle around the old vertex
            step = 0.8 / math.hypot(xu - xv, yu - yv)
            pts[name] = (xv + step * (xu - xv), yv + step * (yu - yv))
    for v in k_names:
        corner = [f"{v}>{u}" for u in k_names if u != v]
        pairs += list(itertools.combinations(corner, 2))
    pairs += [(f"{a}>{b}", f"{b}>{a}") for a, b in k_pairs]
    return names, pts, pairs


_DRAWINGS: dict[str, Callable] = {
    "k4": _k4_drawing,
    "cube": _cube_drawing,
    "dodecahedron": _dodecahedron_drawing,
    "truncated_tetrahedron": _truncated_tetrahedron_drawing,
}


def drawn_graph(name: str) -> tuple[Graph, list[list[int]]]:
    """A planar graph together with the rotation read off its drawing."""
    names, pts, pairs = _DRAWINGS[name]()
    return _placed(pts, names, pairs)


def cycle_rotation(n: int) -> list[list[int]]:
    return [sorted({(i - 1) % n, (i + 1) % n}) for i in range(n)]


def _configuration(name: str, core: list[str], core_edges: list[tuple[str, str]],
                   boundaries: list[tuple[str, str, str, str]]) -> Configuration:
    """Core vertices get ids first, then one (boundary, pendant, pendant)
    block per entry of ``boundaries``; each entry also names the core vertex
    the boundary hangs from."""
    names = list(core)
    triples_named = []
    edges = list(core_edges)
    for boundary, attach, p1, p2 in boundaries:
        names += [boundary, p1, p2]
        triples_named.append((boundary, p1, p2))
        edges += [(attach, boundary), (boundary, p1), (boundary, p2)]
    if len(set(names)) != len(names):
        raise GraphError(f"duplicate vertex names in {name}")
    index = {v: i for i, v in enumerate(names)}
    g = Graph(len(names), [(index[a], index[b]) for a, b in edges])
    triples = tuple(tuple(index[v] for v in t) for t in triples_named)
    return Configuration(name, g, g, triples)


def cfg_3_7_4() -> Configuration:
    """Triangle u1u2u3 sharing u2u3 with the 7-cycle u2..u8, plus the edge
    u11u12 across the 4-face u5u6u12u11."""
    core = ["u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8", "u11", "u12"]
    edges = [("u1", "u2"), ("u1", "u3"), ("u2", "u3"),
             ("u3", "u4"), ("u4", "u5"), ("u5", "u6"), ("u6", "u7"), ("u7", "u8"), ("u8", "u2"),
             ("u5", "u11"), ("u6", "u12"), ("u11", "u12")]
    boundaries = [
        ("u9", "u1", "u9'", "u9''"),
        ("u10", "u4", "u10'", "u10''"),
        ("u13", "u7", "u13'", "u13''"),
        ("u14", "u8", "u14'", "u14''"),
        ("u15", "u11", "u15'", "u15''"),
        ("u16", "u12", "u16'", "u16''"),
    ]
    return _configuration("cfg_3_7_4", core, edges, boundaries)


def cfg_5_5_5_I() -> Configuration:
    """5-cycle u1..u5 with hanging v2..v5, where v2,v3 share the neighbour x
    (= v2'' = v3'') and v4,v5 share y (= v4'' = v5'')."""
    core = ["u1", "u2", "u3", "u4", "u5", "v2", "v3", "v4", "v5", "x", "y"]
    edges = [("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u5", "u1"),
             ("u2", "v2"), ("u3", "v3"), ("u4", "v4"), ("u5", "v5"),
             ("v2", "x"), ("v3", "x"), ("v4", "y"), ("v5", "y")]
    boundaries = [
        ("v1", "u1", "v1'", "v1''"),
        ("v2'", "v2", "v2'a", "v2'b"),
        ("v3'", "v3", "v3'a", "v3'b"),
        ("v4'", "v4", "z4'", "z4''"),
        ("v5'", "v5", "w5'", "w5''"),
        ("y2", "x", "y2'", "y2''"),
        ("w4", "y", "w4'", "w4''"),
    ]
    return _configuration("cfg_5_5_5_I", core, edges, boundaries)


def cfg_3_5_3() -> Configuration:
    """Triangle u1u2u3, edge u2v2 into the 5-cycle v2w1w2w3w4, edge w1w1'
    into the triangle w1'z1z2."""
    core = ["u1", "u2", "u3", "v2", "w1", "w2", "w3", "w4", "w1'", "z1", "z2"]
    edges = [("u1", "u2"), ("u2", "u3"), ("u1", "u3"), ("u2", "v2"),
             ("v2", "w1"), ("w1", "w2"), ("w2", "w3"), ("w3", "w4"), ("w4", "v2"),
             ("w1", "w1'"), ("w1'", "z1"), ("w1'", "z2"), ("z1", "z2")]
    boundaries = [
        ("v1", "u1", "v1'", "v1''"),
        ("v3", "u3", "v3'", "v3''"),
        ("w2'", "w2", "w2'a", "w2'b"),
        ("w3'", "w3", "w3'a", "w3'b"),
        ("w4'", "w4", "w4'a", "w4'b"),
        ("z1'", "z1", "z1'a", "z1'b"),
        ("z2'", "z2", "z2'a", "z2'b"),
    ]
    return _configuration("cfg_3_5_3", core, edges, boundaries)


_SIMPLE: dict[str, Callable[[], object]] = {
    "petersen": petersen,
    "sharpness_gadget": sharpness_gadget,
    "sharpness_doubled": sharpness_doubled,
    "cfg_3_7_4": cfg_3_7_4,
    "cfg_5_5_5_I": cfg_5_5_5_I,
    "cfg_3_5_3": cfg_3_5_3,
    "cube": lambda: drawn_graph("cube")[0],
    "dodecahedron": lambda: drawn_graph("dodecahedron")[0],
    "truncated_tetrahedron": lambda: drawn_graph("truncated_tetrahedron")[0],
}
_SIZED: dict[str, Callable[[int], Graph]] = {"cycle": cycle, "complete": complete}

NAMES = sorted(_SIMPLE) + ["complete(n)", "cycle(n)"]


def build_named(name: str, size: int | None = None):
    """Build a named graph or configuration.

    Sized families accept ``build_named("cycle", 5)`` or ``build_named("cycle(5)")``.
    """
    m = re.fullmatch(r"\s*(\w+)\s*\(\s*(\d+)\s*\)\s*", name)
    if m:
        name, size = m.group(1), int(m.group(2))
    if name in _SIZED:
        if size is None:
            raise UnknownNameError(f"{name} needs a size, e.g. {name}(5)")
        return _SIZED[name](size)
    if name in _SIMPLE and size is None:
        return _SIMPLE[name]()
    raise UnknownNameError(f"unknown name {name!r}; known: {', '.join(NAMES)}")


def search_rotation(g: Graph, *, max_tries: int = 1 << 16) -> list[list[int]] | None:
    """Try every rotation system of a small graph until one traces the faces
    of a sphere. Only meant for fixtures with a handful of degree-3 vertices."""
    from .discharging import RotationSystem, euler_total, trace_faces

    choices = []
    for v in range(g.n):
        nbrs = list(g.adj[v])
        if len(nbrs) <= 2:
            choices.append([nbrs])
        else:
            first = nbrs[0]
            choices.append([[first] + list(p) for p in itertools.permutations(nbrs[1:])])
    tries = 0
    for combo in itertools.product(*choices):
        tries += 1
        if tries > max_tries:
            break
        rot = RotationSystem(g, [list(c) for c in combo])
        if euler_total(g, trace_faces(g, rot)) == -48:
            return [list(c) for c in combo]
    return None
