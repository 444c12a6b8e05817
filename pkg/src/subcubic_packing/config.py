"""Configuration records: a base graph, an extra-edge graph and pendant triples.

File format, one record after another:

    name line
    T
    T lines "boundary p1 p2"
    n
    n(n-1)/2 upper-triangular entries, row-major, 2 = edge, 1 = non-edge
    n
    the same matrix block again for the graph with extra edges

Numbers are whitespace separated and line breaks inside the blocks do not
matter. Blank lines between records are skipped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .graph import Graph

# Outer colour patterns (boundary, pendant 1, pendant 2), in enumeration order.
OUTER_PATTERNS: tuple[tuple[int, int, int], ...] = (
    (6, 1, 2), (6, 1, 3), (6, 1, 4), (6, 1, 5),
    (5, 1, 2), (5, 1, 3), (5, 1, 4), (5, 1, 6),
    (4, 1, 2), (4, 1, 3), (4, 1, 5), (4, 1, 6),
    (3, 1, 2), (3, 1, 4), (3, 1, 5), (3, 1, 6),
    (2, 1, 3), (2, 1, 4), (2, 1, 5), (2, 1, 6),
    (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 2, 6), (1, 3, 4),
    (1, 3, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (1, 5, 6),
)
OUTER_COUNT = len(OUTER_PATTERNS)
OUTER_COUNT_FIRST = 2


class ConfigParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"byte {offset}: {message}")
        self.offset = offset
        self.reason = message


class ConfigError(ValueError):
    """A structurally invalid configuration built in code."""


@dataclass(frozen=True)
class Configuration:
    name: str
    base: Graph
    extra: Graph
    triples: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "triples", tuple(tuple(int(x) for x in t) for t in self.triples))
        problems = self.problems()
        if problems:
            raise ConfigError(f"configuration {self.name!r}: " + "; ".join(problems))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def T(self) -> int:
        return len(self.triples)

    def problems(self) -> list[str]:
        """Hard errors: anything the checker cannot work with."""
        out = []
        if self.base.n != self.extra.n:
            out.append(f"base has {self.base.n} vertices, extra has {self.extra.n}")
        if not self.base.edges <= self.extra.edges:
            missing = sorted(self.base.edges - self.extra.edges)[:3]
            out.append(f"extra graph drops base edges {missing}")
        flat = [x for t in self.triples for x in t]
        if any(len(t) != 3 for t in self.triples):
            out.append("every triple needs three vertices")
        if any(not 0 <= x < self.base.n for x in flat):
            out.append("triple vertex out of range")
        elif len(set(flat)) != len(flat):
            out.append("triple vertices are not pairwise distinct")
        return out

    def diagnostics(self) -> list[str]:
        """Soft findings: the structure a pendant triple is meant to have."""
        out = []
        if self.extra.max_degree() > 3:
            bad = [v for v in range(self.n) if self.extra.degree(v) > 3]
            out.append(f"extra graph is not subcubic at vertices {bad}")
        for i, (b, p1, p2) in enumerate(self.triples):
            if not (self.base.has_edge(b, p1) and self.base.has_edge(b, p2)):
                out.append(f"triple {i}: boundary {b} is not adjacent to both pendants in base")
        return out

    def free_vertices(self) -> list[int]:
        used = {x for t in self.triples for x in t}
        return [v for v in range(self.n) if v not in used]


class _Reader:
    _token = re.compile(rb"\S+")

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def at_end(self) -> bool:
        return not self.data[self.pos:].strip()

    def line(self) -> tuple[str, int]:
        """Next line with content, stripped; returns (text, offset)."""
        while self.pos < len(self.data):
            end = self.data.find(b"\n", self.pos)
            end = len(self.data) if end < 0 else end
            raw = self.data[self.pos:end]
            start = self.pos
            self.pos = end + 1
            if raw.strip():
                try:
                    return raw.strip().decode("utf-8"), start
                except UnicodeDecodeError:
                    raise ConfigParseError("name line is not UTF-8", start) from None
        raise ConfigParseError("unexpected end of file", len(self.data))

    def integer(self, what: str) -> tuple[int, int]:
        m = self._token.search(self.data, self.pos)
        if m is None:
            raise ConfigParseError(f"truncated input: expected {what}", len(self.data))
        self.pos = m.end()
        try:
            return int(m.group()), m.start()
        except ValueError:
            raise ConfigParseError(f"expected {what}, found {m.group()[:20]!r}", m.start()) from None

    def finish_line(self) -> None:
        end = self.data.find(b"\n", self.pos)
        rest = self.data[self.pos: len(self.data) if end < 0 else end]
        if rest.strip():
            raise ConfigParseError(f"unexpected trailing text {rest.strip()[:20]!r}", self.pos)
        self.pos = len(self.data) if end < 0 else end + 1


def _matrix(r: _Reader, n: int, which: str) -> Graph:
    edges = []
    for x in range(n):
        for y in range(x + 1, n):
            value, off = r.integer(f"{which} matrix entry ({x},{y})")
            if value == 2:
                edges.append((x, y))
            elif value != 1:
                raise ConfigParseError(f"{which} matrix entry ({x},{y}) is {value}, expected 1 or 2", off)
    return Graph(n, edges)


def parse_config_bytes(data: bytes) -> list[Configuration]:
    """Parse every record in ``data``; errors carry the byte offset."""
    r = _Reader(data)
    out: list[Configuration] = []
    while not r.at_end():
        name, rec_off = r.line()
        t, off = r.integer("triple count")
        if t < 0:
            raise ConfigParseError(f"negative triple count {t}", off)
        triples = []
        offsets = []
        for i in range(t):
            triple = []
            for _ in range(3):
                v, off = r.integer(f"vertex of triple {i}")
                triple.append(v)
                offsets.append(off)
            triples.append(tuple(triple))
        n, n_off = r.integer("vertex count")
        if n < 0:
            raise ConfigParseError(f"negative vertex count {n}", n_off)
        flat = [x for tr in triples for x in tr]
        for x, off in zip(flat, offsets):
            if not 0 <= x < n:
                raise ConfigParseError(f"triple vertex {x} is not below n={n}", off)
        seen = set()
        for x, off in zip(flat, offsets):
            if x in seen:
                raise ConfigParseError(f"triple vertex {x} repeated", off)
            seen.add(x)
        base = _matrix(r, n, "base")
        n2, off = r.integer("vertex count of extra graph")
        if n2 != n:
            raise ConfigParseError(f"extra graph has {n2} vertices, base has {n}", off)
        extra = _matrix(r, n, "extra")
        r.finish_line()
        try:
            out.append(Configuration(name, base, extra, tuple(triples)))
        except ConfigError as exc:
            raise ConfigParseError(str(exc), rec_off) from None
    return out


def parse_config_file(path) -> list[Configuration]:
    with open(path, "rb") as fh:
        return parse_config_bytes(fh.read())


def _matrix_lines(g: Graph) -> list[str]:
    lines = []
    for x in range(g.n):
        row = ["2" if g.has_edge(x, y) else "1" for y in range(x + 1, g.n)]
        if row:
            lines.append(" ".join(row))
    return lines


def format_config(cfg: Configuration) -> str:
    lines = [cfg.name, str(cfg.T)]
    lines += [" ".join(map(str, t)) for t in cfg.triples]
    lines.append(str(cfg.n))
    lines += _matrix_lines(cfg.base)
    lines.append(str(cfg.n))
    lines += _matrix_lines(cfg.extra)
    return "\n".join(lines) + "\n"


def format_configs(cfgs) -> str:
    return "\n".join(format_config(c) for c in cfgs)

