"""Faces from rotation systems, initial charges, the small-face rules and the
resulting happiness report.

Charges are kept as integers counting quarters, so 1, 1/2 and 1/4 are 4, 2
and 1 and nothing is ever rounded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graph import DisconnectedGraphError, Graph, GraphError

# quarters received per shared edge by a small face from a face of length >= 7
RULE_AMOUNT = {3: 4, 4: 2, 5: 1}
DONOR_MIN = 7


class RotationError(GraphError):
    pass


class EulerError(ValueError):
    def __init__(self, total_quarters: int):
        super().__init__(f"charge total is {quarters_str(total_quarters)}, expected -12: "
                         "the rotation system does not describe a plane embedding")
        self.total_quarters = total_quarters


def quarters_str(q: int) -> str:
    return f"{q}/4"


def quarters_value(q: int) -> Fraction:
    return Fraction(q, 4)


class RotationSystem:
    """Cyclic neighbour order at every vertex."""

    __slots__ = ("graph", "order", "_pos")

    def __init__(self, g: Graph, order: Sequence[Sequence[int]]):
        if len(order) != g.n:
            raise RotationError(f"rotation lists {len(order)} vertices, graph has {g.n}")
        rows = []
        for v, row in enumerate(order):
            row = tuple(int(u) for u in row)
            if sorted(row) != list(g.adj[v]):
                raise RotationError(f"rotation at {v} is {list(row)}, neighbours are {list(g.adj[v])}")
            rows.append(row)
        self.graph = g
        self.order = tuple(rows)
        self._pos = [{u: i for i, u in enumerate(row)} for row in rows]

    def after(self, v: int, u: int) -> int:
        """The neighbour of ``v`` that follows ``u`` cyclically."""
        row = self.order[v]
        return row[(self._pos[v][u] + 1) % len(row)]


def parse_rotation(text: str, g: Graph | None = None) -> RotationSystem:
    """Line ``i`` lists the neighbours of vertex ``i`` in cyclic order. Without
    ``g`` the graph is read off the lists, which must then be symmetric."""
    lines = [ln.split() for ln in text.replace("\r\n", "\n").split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    try:
        order = [[int(t) for t in ln] for ln in lines]
    except ValueError as exc:
        raise RotationError(f"rotation file: {exc}") from None
    if g is None:
        n = len(order)
        edges = set()
        for v, row in enumerate(order):
            for u in row:
                if not 0 <= u < n:
                    raise RotationError(f"vertex {v} lists {u}, outside 0..{n - 1}")
                if v not in order[u]:
                    raise RotationError(f"{u} appears at {v} but {v} does not appear at {u}")
                edges.add((min(u, v), max(u, v)))
        g = Graph(n, edges)
    return RotationSystem(g, order)


def format_rotation(rot: RotationSystem) -> str:
    return "".join(" ".join(map(str, row)) + "\n" for row in rot.order)


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        return len(self.darts)


def trace_faces(g: Graph, rot: RotationSystem) -> list[Face]:
    """Follow (u,v) -> (v, w) with w the successor of u around v until every
    directed edge is used once. Faces come out in order of their smallest
    starting dart. A graph without edges has one face of length 0."""
    if rot.graph != g:
        raise RotationError("rotation system belongs to a different graph")
    if g.m == 0:
        return [Face(0, ())]
    seen = set()
    faces = []
    for u, v in sorted((a, b) for a in range(g.n) for b in g.adj[a]):
        if (u, v) in seen:
            continue
        walk = []
        dart = (u, v)
        while dart not in seen:
            seen.add(dart)
            walk.append(dart)
            a, b = dart
            dart = (b, rot.after(b, a))
        faces.append(Face(len(faces), tuple(walk)))
    return faces


def euler_total(g: Graph, faces: Sequence[Face]) -> int:
    """Sum of 2d(v)-6 over vertices plus l(f)-6 over faces, in quarters."""
    return 4 * (sum(2 * g.degree(v) - 6 for v in range(g.n)) + sum(f.length - 6 for f in faces))


def verify_euler_identity(g: Graph, faces: Sequence[Face]) -> Fraction:
    if not g.is_connected():
        raise DisconnectedGraphError(g.components())
    total = euler_total(g, faces)
    if total != -48:
        raise EulerError(total)
    return quarters_value(total)


@dataclass(frozen=True)
class ChargeLedger:
    vertex_q: tuple[int, ...]
    face_q: tuple[int, ...]

    @property
    def total_q(self) -> int:
        return sum(self.vertex_q) + sum(self.face_q)


def initial_ledger(g: Graph, faces: Sequence[Face]) -> ChargeLedger:
    return ChargeLedger(tuple(4 * (2 * g.degree(v) - 6) for v in range(g.n)),
                        tuple(4 * (f.length - 6) for f in faces))


@dataclass(frozen=True)
class Transfer:
    edge: tuple[int, int]
    source: int
    target: int
    amount_q: int


def _edge_sides(faces: Sequence[Face]) -> dict[tuple[int, int], tuple[int, int]]:
    """For each undirected edge, the faces on the (lo,hi) and (hi,lo) sides."""
    face_of = {}
    for f in faces:
        for dart in f.darts:
            face_of[dart] = f.id
    sides = {}
    for (a, b), fid in face_of.items():
        if a < b:
            sides[(a, b)] = (fid, face_of[(b, a)])
    return dict(sorted(sides.items()))


def apply_rules(g: Graph, faces: Sequence[Face], ledger: ChargeLedger) -> tuple[ChargeLedger, list[Transfer]]:
    """Every edge between a 3-, 4- or 5-face and a face of length >= 7 moves
    1, 1/2 or 1/4 across it. A face meeting a donor along two edges receives
    twice."""
    face_q = list(ledger.face_q)
    log = []
    for edge, (f1, f2) in _edge_sides(faces).items():
        if f1 == f2:
            continue
        for small, big in ((f1, f2), (f2, f1)):
            amount = RULE_AMOUNT.get(faces[small].length)
            if amount and faces[big].length >= DONOR_MIN:
                face_q[small] += amount
                face_q[big] -= amount
                log.append(Transfer(edge, big, small, amount))
    return ChargeLedger(ledger.vertex_q, tuple(face_q)), log


@dataclass(frozen=True)
class FaceRow:
    id: int
    length: int
    x: int
    y: int
    z: int
    initial_q: int
    final_q: int
    neighbour_lengths: tuple[int, ...]

    @property
    def formula_q(self) -> int:
        """l-6-x-y/2-z/4 in quarters, the charge left on a donor face."""
        return 4 * (self.length - 6) - 4 * self.x - 2 * self.y - self.z


@dataclass(frozen=True)
class HappinessReport:
    euler_total_q: int
    faces: tuple[FaceRow, ...]
    transfers: tuple[Transfer, ...]
    unhappy_faces: tuple[int, ...]
    unhappy_vertices: tuple[int, ...]
    formula_mismatches: tuple[int, ...]
    conserved: bool

    @property
    def arithmetic_ok(self) -> bool:
        return self.euler_total_q == -48 and self.conserved and not self.formula_mismatches

    def to_json(self) -> dict:
        return {
            "euler_total": quarters_str(self.euler_total_q),
            "faces": [
                {"id": r.id, "length": r.length, "x": r.x, "y": r.y, "z": r.z,
                 "initial": quarters_str(r.initial_q), "final": quarters_str(r.final_q)}
                for r in self.faces
            ],
            "transfers": [
                {"edge": list(t.edge), "from": t.source, "to": t.target, "amount": quarters_str(t.amount_q)}
                for t in self.transfers
            ],
            "unhappy": [
                {"face": fid, "length": self.faces[fid].length, "final": quarters_str(self.faces[fid].final_q),
                 "neighbour_lengths": list(self.faces[fid].neighbour_lengths)}
                for fid in self.unhappy_faces
            ],
            "unhappy_vertices": list(self.unhappy_vertices),
            "formula_mismatches": list(self.formula_mismatches),
            "conserved": self.conserved,
        }


def happiness_report(g: Graph, faces: Sequence[Face], initial: ChargeLedger,
                     final: ChargeLedger, transfers: Sequence[Transfer]) -> HappinessReport:
    counts = [[0, 0, 0] for _ in faces]
    neighbours: list[list[int]] = [[] for _ in faces]
    for f1, f2 in _edge_sides(faces).values():
        if f1 == f2:
            continue
        for a, b in ((f1, f2), (f2, f1)):
            neighbours[a].append(faces[b].length)
            slot = {3: 0, 4: 1, 5: 2}.get(faces[b].length)
            if slot is not None:
                counts[a][slot] += 1
    rows = tuple(
        FaceRow(f.id, f.length, *counts[f.id], initial.face_q[f.id], final.face_q[f.id],
                tuple(sorted(neighbours[f.id])))
        for f in faces
    )
    mismatches = tuple(r.id for r in rows if r.length >= DONOR_MIN and r.final_q != r.formula_q)
    return HappinessReport(
        euler_total_q=euler_total(g, faces),
        faces=rows,
        transfers=tuple(transfers),
        unhappy_faces=tuple(r.id for r in rows if r.final_q < 0),
        unhappy_vertices=tuple(v for v in range(g.n) if final.vertex_q[v] < 0),
        formula_mismatches=mismatches,
        conserved=initial.total_q == final.total_q,
    )


def audit(g: Graph, rot: RotationSystem) -> HappinessReport:
    """Trace, charge, discharge and report in one go."""
    faces = trace_faces(g, rot)
    start = initial_ledger(g, faces)
    end, log = apply_rules(g, faces, start)
    return happiness_report(g, faces, start, end, log)


def ten_plus_violations(length: int) -> list[tuple[int, int, int]]:
    """Profiles (x, y, z) allowed by 3x+2y <= l, 2x+3z/2 <= l, 2y+3z/2 <= l
    for which l-6-x-y/2-z/4 < 3l/5-6. Scaled by 20 this is 8l < 20x+10y+5z."""
    bad = []
    for x in range(length + 1):
        for y in range(length + 1):
            if 3 * x + 2 * y > length:
                break
            for z in range(length + 1):
                if 4 * x + 3 * z > 2 * length or 4 * y + 3 * z > 2 * length:
                    break
                if 20 * x + 10 * y + 5 * z > 8 * length:
                    bad.append((x, y, z))
    return bad


def report_json(report: HappinessReport) -> str:
    return json.dumps(report.to_json(), indent=2, sort_keys=True)
