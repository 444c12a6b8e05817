"""Packing colourings: specs, verification, ordered extension and refutation."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

from .graph import Graph, bfs_distances, disjoint_union, power_graph
from .kernels import extend_coloring

Coloring = tuple[int, ...]


class ColoringError(ValueError):
    """Malformed spec or colouring (bad length, colour out of range)."""


class InvalidPartialError(ColoringError):
    """``extend`` was handed a partial colouring that already has a violation."""

    def __init__(self, report: "ValidationReport"):
        super().__init__(f"partial coloring is not violation-free: {report.violations[:5]}")
        self.report = report


class ColorableError(ValueError):
    """Raised by ``prove_uncolorable`` when the graph is colourable after all."""

    def __init__(self, coloring: Coloring):
        super().__init__("graph is colorable; witness attached")
        self.coloring = coloring


@dataclass(frozen=True)
class PackingSpec:
    """Radii ``(s_1, ..., s_k)``; colour ``i`` (1-based) has radius ``s_i``."""

    radii: tuple[int, ...]

    def __post_init__(self) -> None:
        radii = tuple(int(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise ColoringError("a packing spec needs at least one colour")
        if any(r < 1 for r in radii):
            raise ColoringError(f"radii must be positive: {radii}")
        if any(a > b for a, b in zip(radii, radii[1:])):
            raise ColoringError(f"radii must be non-decreasing: {radii}")

    @classmethod
    def parse(cls, text: str) -> "PackingSpec":
        parts = [p for p in text.replace(" ", "").split(",") if p]
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ColoringError(f"cannot parse spec {text!r}: {exc}") from None

    @property
    def k(self) -> int:
        return len(self.radii)

    def radius(self, color: int) -> int:
        return self.radii[color - 1]

    def __str__(self) -> str:
        return ",".join(map(str, self.radii))


GOOD_SPEC = PackingSpec((1, 2, 2, 2, 2, 2))


@dataclass(frozen=True)
class Violation:
    color: int
    u: int
    v: int
    dist: int


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[Violation, ...] = ()


def check_coloring(g: Graph, spec: PackingSpec, c: Sequence[int]) -> Coloring:
    """Return ``c`` as a tuple after checking its length and colour range."""
    if len(c) != g.n:
        raise ColoringError(f"coloring has {len(c)} entries, graph has {g.n} vertices")
    out = tuple(int(x) for x in c)
    for v, x in enumerate(out):
        if not 0 <= x <= spec.k:
            raise ColoringError(f"vertex {v} has colour {x}, spec allows 0..{spec.k}")
    return out


def verify(g: Graph, spec: PackingSpec, c: Sequence[int]) -> ValidationReport:
    """List every same-coloured pair closer than its colour's radius allows."""
    c = check_coloring(g, spec, c)
    violations = []
    for u in range(g.n):
        cu = c[u]
        if cu == 0:
            continue
        radius = spec.radius(cu)
        dist = bfs_distances(g, u)
        for v in range(u + 1, g.n):
            if c[v] == cu and dist[v] <= radius:
                violations.append(Violation(cu, u, v, int(dist[v])))
    violations.sort(key=lambda t: (t.u, t.v))
    return ValidationReport(not violations, tuple(violations))


class ConflictTable:
    """Per-radius conflict neighbourhoods in CSR form, as the kernels want them.

    Colour ``c`` conflicts with the neighbours of a vertex in ``G^{s_c}``.
    Only the distinct radii of ``spec`` get a table.
    """

    def __init__(self, g: Graph, spec: PackingSpec):
        self.n = g.n
        self.spec = spec
        distinct = sorted(set(spec.radii))
        self.radius_index = [0] + [distinct.index(r) for r in spec.radii]
        self.offsets: list[list[int]] = []
        self.targets: list[list[int]] = []
        for r in distinct:
            pg = power_graph(g, r)
            off = [0]
            tgt: list[int] = []
            for x in range(g.n):
                tgt.extend(pg.adj[x])
                off.append(len(tgt))
            self.offsets.append(off)
            self.targets.append(tgt)

    def run(self, partial: Sequence[int]) -> tuple[Coloring | None, int]:
        work = list(partial)
        found, nodes = extend_coloring(work, self.spec.k, self.radius_index, self.offsets, self.targets)
        return (tuple(work) if found else None), nodes


def extend(g: Graph, spec: PackingSpec, partial: Sequence[int] | None = None) -> Coloring | None:
    """Complete ``partial`` without recolouring anything, or return None.

    Free vertices are filled in increasing id and colours tried 1..k, so the
    answer is the first completion in that order.
    """
    partial = (0,) * g.n if partial is None else partial
    report = verify(g, spec, partial)
    if not report.valid:
        raise InvalidPartialError(report)
    coloring, _ = ConflictTable(g, spec).run(partial)
    return coloring


@dataclass(frozen=True)
class Certificate:
    node_count: int
    exhaustive: bool
    roots: tuple[int, ...] = ()


def prove_uncolorable(g: Graph, spec: PackingSpec, *, break_symmetry: bool = False) -> Certificate:
    """Exhaust the extension tree from the empty colouring.

    With ``break_symmetry`` the first vertex only tries the lowest colour of
    each group of equal radii, which is enough because swapping two colours of
    the same radius maps valid colourings to valid colourings. ``roots`` lists
    the colours tried there. Raises ``ColorableError`` when a colouring exists.
    """
    table = ConflictTable(g, spec)
    if g.n == 0 or not break_symmetry:
        coloring, nodes = table.run([0] * g.n)
        if coloring is not None:
            raise ColorableError(coloring)
        return Certificate(nodes, True)
    roots = []
    seen = set()
    for color, radius in enumerate(spec.radii, start=1):
        if radius not in seen:
            seen.add(radius)
            roots.append(color)
    total = 0
    for color in roots:
        partial = [0] * g.n
        partial[0] = color
        coloring, nodes = table.run(partial)
        total += nodes + 1
        if coloring is not None:
            raise ColorableError(coloring)
    return Certificate(total, True, tuple(roots))


def sdr_assign(demands: Sequence[Iterable[Hashable]]) -> tuple | None:
    """Pick distinct representatives, one per set, or None if Hall fails.

    Kuhn's augmenting-path matching. Candidates are tried in sorted order so
    the answer is deterministic.
    """
    options = [sorted(set(d), key=repr) for d in demands]
    owner: dict[Hashable, int] = {}

    def augment(i: int, visited: set) -> bool:
        for x in options[i]:
            if x in visited:
                continue
            visited.add(x)
            if x not in owner or augment(owner[x], visited):
                owner[x] = i
                return True
        return False

    for i in range(len(options)):
        if not augment(i, set()):
            return None
    pick: list = [None] * len(options)
    for x, i in owner.items():
        pick[i] = x
    return tuple(pick)


def double_gadget(g1: Graph, v1: int) -> Graph:
    """Two copies of ``g1`` joined by an edge between the copies of ``v1``."""
    both = disjoint_union(g1, g1)
    return both.with_edges([(v1, v1 + g1.n)])


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SharpnessReport:
    checks: tuple[Check, ...] = field(default_factory=tuple)
    coloring_1_2_5: Coloring | None = None
    refutation_nodes: int | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _disjoint_triangle_cover(g: Graph, vertices: list[int]) -> tuple | None:
    vs = set(vertices)
    triangles = [
        t for t in itertools.combinations(sorted(vs), 3)
        if g.has_edge(t[0], t[1]) and g.has_edge(t[0], t[2]) and g.has_edge(t[1], t[2])
    ]
    for a, b in itertools.combinations(triangles, 2):
        if not set(a) & set(b) and set(a) | set(b) == vs:
            return a, b
    return None


def validate_sharpness_gadget(g1: Graph, v1: int, *, search_limit: int = 16) -> SharpnessReport:
    """Check every property the doubled-gadget sharpness argument relies on.

    The two colouring checks run exhaustive searches on the doubled graph, so
    they are skipped (and reported failed) once ``g1`` has more than
    ``search_limit`` vertices.
    """
    checks = []
    checks.append(Check("order_7", g1.n == 7, f"|V|={g1.n}"))
    in_range = 0 <= v1 < g1.n
    checks.append(Check("v1_in_range", in_range, f"v1={v1}"))
    checks.append(Check("max_degree_3", g1.max_degree() <= 3, f"max degree {g1.max_degree()}"))
    checks.append(Check("v1_degree_2", in_range and g1.degree(v1) == 2,
                        f"deg(v1)={g1.degree(v1) if in_range else None}"))
    if g1.n:
        ecc = max(max(bfs_distances(g1, u)) for u in range(g1.n))
    else:
        ecc = 0
    checks.append(Check("diameter_2", ecc == 2, f"diameter {ecc}"))
    cover = _disjoint_triangle_cover(g1, [u for u in range(g1.n) if u != v1]) if in_range else None
    checks.append(Check("two_disjoint_triangles", cover is not None, f"cover {cover}"))

    coloring = None
    nodes = None
    if not in_range or g1.n > search_limit:
        checks.append(Check("doubled_1_2^5_colorable", False, "skipped"))
        checks.append(Check("doubled_not_1_2^4_colorable", False, "skipped"))
    else:
        doubled = double_gadget(g1, v1)
        coloring = extend(doubled, GOOD_SPEC)
        checks.append(Check("doubled_1_2^5_colorable", coloring is not None,
                            "" if coloring is None else " ".join(map(str, coloring))))
        try:
            cert = prove_uncolorable(doubled, PackingSpec((1, 2, 2, 2, 2)))
            nodes = cert.node_count
            checks.append(Check("doubled_not_1_2^4_colorable", True, f"{nodes} search nodes"))
        except ColorableError as exc:
            checks.append(Check("doubled_not_1_2^4_colorable", False,
                                "colored: " + " ".join(map(str, exc.coloring))))
    return SharpnessReport(tuple(checks), coloring, nodes)
