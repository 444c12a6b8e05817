"""Check that every consistent pendant precolouring of a configuration extends.

Precolourings are vectors of pattern indices, one per triple, enumerated in
lexicographic order (triple 0 varies slowest) with triple 0 restricted to the
first ``OUTER_COUNT_FIRST`` patterns by default. A precolouring is skipped
when two of its coloured vertices clash in the extra-edge graph; otherwise it
must extend on the base graph with spec (1,2,2,2,2,2), filling free vertices
in increasing id.

Two engines give the same answers. ``enumerate`` walks the precolourings one
by one and calls the extension kernel. ``frontier`` decides whole boxes of
precolourings at once (see ``_frontier``) and only drops to enumeration for
small boxes. Consistency counts come from variable elimination over the
pairwise pattern constraints, so statistics never need a full walk.
"""

from __future__ import annotations

import concurrent.futures
import json
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from ._frontier import NPAT, FrontierPlan, box_iter, box_size, prune_domains
from .config import (
    OUTER_COUNT_FIRST,
    OUTER_PATTERNS,
    Configuration,
    parse_config_bytes,
)
from .graph import bfs_distances
from .packing import GOOD_SPEC, ConflictTable

RADIUS = (0, 1, 2, 2, 2, 2, 2)
FULL = (1 << NPAT) - 1
# boxes with at most this many precolourings are enumerated directly
ENUMERATE_LIMIT = 2000
# work units are cut by the patterns of this many leading triples
PARTITION_DEPTH = 2
TRIAL_KEEP = (6, 16)


def first_domains(cfg: Configuration, exhaustive_first: bool = False) -> list[int]:
    doms = [FULL] * cfg.T
    if cfg.T and not exhaustive_first:
        doms[0] = (1 << OUTER_COUNT_FIRST) - 1
    return doms


def apply_patterns(cfg: Configuration, indices: Sequence[int]) -> tuple[int, ...]:
    """The colouring with each triple painted by its pattern, all else 0."""
    col = [0] * cfg.n
    for triple, p in zip(cfg.triples, indices):
        for v, c in zip(triple, OUTER_PATTERNS[p]):
            col[v] = c
    return tuple(col)


def enumerate_precolorings(cfg: Configuration, exhaustive_first: bool = False) -> Iterator[tuple[int, ...]]:
    """Lazily yield every precolouring in enumeration order, before pruning."""
    for indices in box_iter(first_domains(cfg, exhaustive_first)):
        yield apply_patterns(cfg, indices)


def precoloring_consistent(cfg: Configuration, pre: Sequence[int]) -> bool:
    """No two coloured vertices share a colour within its radius in ``extra``."""
    colored = [v for v in range(cfg.n) if pre[v]]
    for v in colored:
        dist = bfs_distances(cfg.extra, v)
        r = RADIUS[pre[v]]
        for u in colored:
            if u != v and pre[u] == pre[v] and dist[u] <= r:
                return False
    return True


class CheckTables:
    """Everything about a configuration that the engines look up repeatedly."""

    def __init__(self, cfg: Configuration):
        self.cfg = cfg
        self.T = cfg.T
        n = cfg.n
        dbase = [bfs_distances(cfg.base, v) for v in range(n)]
        dextra = [bfs_distances(cfg.extra, v) for v in range(n)]
        self.free = cfg.free_vertices()
        free_set = set(self.free)
        self._dbase = dbase
        self.core_near = {
            x: [y for y in self.free if y != x and dbase[x][y] <= 2] for x in self.free
        }
        # effect[j][p][x]: bitmask of colours pattern p of triple j forbids at x
        self.effect: list[list[dict[int, int]]] = []
        self.windows: list[list[int]] = []
        for triple in cfg.triples:
            per_pattern = []
            window = set()
            for pat in OUTER_PATTERNS:
                eff: dict[int, int] = {}
                for v, c in zip(triple, pat):
                    for x in self.free:
                        if dbase[v][x] <= RADIUS[c]:
                            eff[x] = eff.get(x, 0) | (1 << c)
                per_pattern.append(eff)
                window.update(eff)
            self.effect.append(per_pattern)
            self.windows.append(sorted(window & free_set))

        def clash(ta, pa, tb, pb):
            for v, c in zip(ta, pa):
                for u, d in zip(tb, pb):
                    if c == d and u != v and dextra[v][u] <= RADIUS[c]:
                        return True
            return False

        self.self_ok = []
        for triple in cfg.triples:
            mask = 0
            for p, pat in enumerate(OUTER_PATTERNS):
                if not clash(triple, pat, triple, pat):
                    mask |= 1 << p
            self.self_ok.append(mask)
        # comp[j][j2][p]: patterns of j2 compatible with pattern p of j
        comp = np.full((self.T, self.T, NPAT), FULL, dtype=np.int64)
        self.linked: list[tuple[int, int]] = []
        for j in range(self.T):
            for j2 in range(j + 1, self.T):
                tj, tk = cfg.triples[j], cfg.triples[j2]
                if min(dextra[v][u] for v in tj for u in tk) > 2:
                    continue
                any_clash = False
                for p, pa in enumerate(OUTER_PATTERNS):
                    for q, pb in enumerate(OUTER_PATTERNS):
                        if clash(tj, pa, tk, pb):
                            comp[j, j2, p] &= ~(1 << q)
                            comp[j2, j, q] &= ~(1 << p)
                            any_clash = True
                if any_clash:
                    self.linked.append((j, j2))
        self.comp_array = comp
        self._conflict = ConflictTable(cfg.base, GOOD_SPEC)
        self._plan: FrontierPlan | None = None

    def core_conflict(self, x: int, y: int, color: int) -> bool:
        return self._dbase[x][y] <= RADIUS[color]

    @property
    def plan(self) -> FrontierPlan:
        if self._plan is None:
            # work units fix the patterns of the partition triples
            self._plan = FrontierPlan(self, pinned=range(min(PARTITION_DEPTH, self.T)),
                                      trial_boxes=self._trial_boxes())
        return self._plan

    def _trial_boxes(self) -> list[list[int]] | None:
        """Boxes shaped like a typical work unit, small then larger, for timing
        candidate sweep orders: the first unit that survives domain pruning,
        with every other triple cut down to an even spread of its surviving
        patterns."""
        for unit in partitions(first_domains(self.cfg, exhaustive_first=True)):
            doms = prune_domains(self, unit)
            if not all(doms):
                continue
            boxes = []
            for keep in TRIAL_KEEP:
                box = []
                for d in doms:
                    bits = [p for p in range(NPAT) if d >> p & 1]
                    if len(bits) > keep:
                        bits = [bits[i * len(bits) // keep] for i in range(keep)]
                    box.append(sum(1 << p for p in bits))
                box = prune_domains(self, box)
                if not all(box):
                    break
                boxes.append(box)
            else:
                return boxes
        return None

    def consistent_indices(self, idx: Sequence[int]) -> bool:
        for j, p in enumerate(idx):
            if not (self.self_ok[j] >> p) & 1:
                return False
        for j, j2 in self.linked:
            if not (int(self.comp_array[j, j2, idx[j]]) >> idx[j2]) & 1:
                return False
        return True

    def extends(self, idx: Sequence[int]) -> bool:
        coloring, _ = self._conflict.run(apply_patterns(self.cfg, idx))
        return coloring is not None

    def count_consistent(self, domains: Sequence[int]) -> int:
        """Number of consistent pattern vectors in a box, exactly."""
        factors = []
        for j, d in enumerate(domains):
            mask = d & self.self_ok[j]
            vec = np.array([(mask >> p) & 1 for p in range(NPAT)], dtype=object)
            factors.append(((j,), vec))
        for j, j2 in self.linked:
            mat = np.array(
                [[(int(self.comp_array[j, j2, p]) >> q) & 1 for q in range(NPAT)] for p in range(NPAT)],
                dtype=object,
            )
            factors.append(((j, j2), mat))
        return _eliminate(factors, self.T)


def _eliminate(factors, nvars: int) -> int:
    """Sum over all assignments of the product of the factors."""
    factors = list(factors)
    remaining = set(range(nvars))
    total = 1
    while remaining:
        def degree(v):
            scope = set()
            for vs, _ in factors:
                if v in vs:
                    scope.update(vs)
            return (len(scope), v)

        v = min(remaining, key=degree)
        remaining.discard(v)
        touching = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        scope = sorted({u for vs, _ in touching for u in vs})
        product = np.ones((NPAT,) * len(scope), dtype=object)
        for vs, arr in touching:
            shape = [NPAT if u in vs else 1 for u in scope]
            order = sorted(vs, key=scope.index)
            perm = [vs.index(u) for u in order]
            product = product * np.transpose(arr, perm).reshape(shape)
        summed = product.sum(axis=scope.index(v))
        rest = tuple(u for u in scope if u != v)
        if rest:
            factors.append((rest, summed))
        else:
            total *= summed
    for vs, arr in factors:
        total *= arr
    return int(total)


@dataclass(frozen=True)
class Witness:
    indices: tuple[int, ...]
    coloring: tuple[int, ...]
    scanned_before: int  # precolourings of the region strictly before this one
    inconsistent_before: int


@dataclass
class Scan:
    """Result of walking a region in order, stopping at a witness limit."""

    total: int = 0
    inconsistent: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    stopped: bool = False

    def absorb(self, other: "Scan", limit: int) -> None:
        room = limit - len(self.witnesses)
        if len(other.witnesses) >= room:
            for w in other.witnesses[:room]:
                self.witnesses.append(Witness(w.indices, w.coloring,
                                              self.total + w.scanned_before,
                                              self.inconsistent + w.inconsistent_before))
            last = other.witnesses[room - 1]
            self.total += last.scanned_before + 1
            self.inconsistent += last.inconsistent_before
            self.stopped = True
            return
        for w in other.witnesses:
            self.witnesses.append(Witness(w.indices, w.coloring,
                                          self.total + w.scanned_before,
                                          self.inconsistent + w.inconsistent_before))
        self.total += other.total
        self.inconsistent += other.inconsistent
        self.stopped = other.stopped


def _scan_enumerate(tb: CheckTables, domains, limit: int) -> Scan:
    out = Scan()
    for idx in box_iter(domains):
        if not tb.consistent_indices(idx):
            out.inconsistent += 1
            out.total += 1
            continue
        if not tb.extends(idx):
            out.witnesses.append(Witness(tuple(idx), apply_patterns(tb.cfg, idx), out.total, out.inconsistent))
            if len(out.witnesses) >= limit:
                out.total += 1
                out.stopped = True
                return out
        out.total += 1
    return out


def _scan_frontier(tb: CheckTables, domains, limit: int) -> Scan:
    size = box_size(domains)
    if size <= max(ENUMERATE_LIMIT, 1):
        return _scan_enumerate(tb, domains, limit)
    consistent = tb.count_consistent(domains)
    if consistent == 0 or not tb.plan.exists_failure(domains):
        return Scan(size, size - consistent)
    # split on the first triple that still has a choice
    j = next(i for i, d in enumerate(domains) if d & (d - 1))
    out = Scan()
    for p in range(NPAT):
        if not (domains[j] >> p) & 1:
            continue
        sub = list(domains)
        sub[j] = 1 << p
        out.absorb(_scan_frontier(tb, sub, limit - len(out.witnesses)), limit)
        if out.stopped:
            break
    return out


ENGINES: dict[str, Callable] = {"enumerate": _scan_enumerate, "frontier": _scan_frontier}


def region_from(domains: Sequence[int], cursor: Sequence[int] | None) -> list[list[int]]:
    """Boxes covering the part of ``domains`` at or after ``cursor``, in order."""
    if cursor is None:
        return [list(domains)]
    cursor = list(cursor)
    if len(cursor) != len(domains) or any(not 0 <= c < NPAT for c in cursor):
        raise ValueError(f"cursor {cursor} does not fit {len(domains)} triples")
    boxes = []
    exact = [domains[i] & (1 << c) for i, c in enumerate(cursor)]
    if all(exact):
        boxes.append(exact)
    for d in range(len(domains) - 1, -1, -1):
        box = [domains[i] & (1 << cursor[i]) for i in range(d)]
        later = domains[d] & ~((1 << (cursor[d] + 1)) - 1)
        box += [later] + list(domains[d + 1:])
        if all(box):
            boxes.append(box)
    return boxes


def partitions(domains: Sequence[int]) -> list[list[int]]:
    """Split a box by the pattern indices of its first two triples."""
    heads = min(PARTITION_DEPTH, len(domains))
    out = []
    for head in box_iter(domains[:heads]):
        out.append([1 << p for p in head] + list(domains[heads:]))
    return out


def _work_units(domains, cursor):
    units = []
    for part in partitions(domains):
        for box in region_from(domains, cursor):
            inter = [a & b for a, b in zip(part, box)]
            if all(inter):
                units.append(inter)
    units.sort(key=lambda b: [(d & -d).bit_length() for d in b])
    return units


_WORKER_TABLES: dict[int, CheckTables] = {}


def _worker_scan(payload):
    cfg, key, engine, box, limit = payload
    tb = _WORKER_TABLES.get(key)
    if tb is None:
        _WORKER_TABLES.clear()
        tb = _WORKER_TABLES[key] = CheckTables(cfg)
    return ENGINES[engine](tb, box, limit)


@dataclass(frozen=True)
class Stats:
    precolorings_total: int
    pruned_inconsistent: int
    extended_ok: int


@dataclass(frozen=True)
class ReducibilityResult:
    name: str
    verdict: str  # "reducible" or "counterexample"
    witnesses: tuple[Witness, ...]
    stats: Stats
    exhaustive_first: bool
    resumed_from: tuple[int, ...] | None = None

    @property
    def reducible(self) -> bool:
        return self.verdict == "reducible"

    @property
    def witness(self) -> tuple[int, ...] | None:
        return self.witnesses[0].coloring if self.witnesses else None

    def text(self) -> str:
        if self.reducible:
            return f"'{self.name}' Reducible"
        lines = [f"'{self.name}'"]
        for w in self.witnesses:
            lines.append("Precoloring " + " ".join(map(str, w.coloring)) + " does not extend")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "exhaustive_first": self.exhaustive_first,
            "stats": {
                "precolorings_total": self.stats.precolorings_total,
                "pruned_inconsistent": self.stats.pruned_inconsistent,
                "extended_ok": self.stats.extended_ok,
            },
            "witness": list(self.witness) if self.witness is not None else None,
            "witnesses": [
                {"patterns": list(w.indices), "coloring": list(w.coloring)} for w in self.witnesses
            ],
            "resumed_from": list(self.resumed_from) if self.resumed_from is not None else None,
        }


ProgressFn = Callable[[tuple[int, ...], int], None]


def check_reducible(
    cfg: Configuration,
    *,
    exhaustive_first: bool = False,
    witness_limit: int = 1,
    progress: ProgressFn | None = None,
    workers: int = 1,
    engine: str = "frontier",
    resume: Sequence[int] | None = None,
    tables: CheckTables | None = None,
) -> ReducibilityResult:
    """Decide reducibility; on failure report the first ``witness_limit``
    failing precolourings in enumeration order.

    ``progress`` is called after every finished work unit with the index
    vector where the next unit starts (a resume cursor) and the number of
    precolourings covered so far.
    """
    if witness_limit < 1:
        raise ValueError("witness_limit must be at least 1")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}")
    domains = first_domains(cfg, exhaustive_first)
    units = _work_units(domains, resume)
    tb = tables if tables is not None else CheckTables(cfg)
    total = Scan()

    def cursor_after(i):
        if i + 1 < len(units):
            return tuple((d & -d).bit_length() - 1 for d in units[i + 1])
        return ()

    if workers <= 1 or len(units) <= 1:
        for i, unit in enumerate(units):
            total.absorb(ENGINES[engine](tb, unit, witness_limit - len(total.witnesses)), witness_limit)
            if progress:
                progress(cursor_after(i), total.total)
            if total.stopped:
                break
    else:
        key = id(cfg)
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_worker_scan, (cfg, key, engine, u, witness_limit)) for u in units]
            try:
                for i, fut in enumerate(futures):
                    total.absorb(fut.result(), witness_limit)
                    if progress:
                        progress(cursor_after(i), total.total)
                    if total.stopped:
                        break
            finally:
                for fut in futures:
                    fut.cancel()
    consistent = total.total - total.inconsistent
    stats = Stats(total.total, total.inconsistent, consistent - len(total.witnesses))
    verdict = "counterexample" if total.witnesses else "reducible"
    return ReducibilityResult(cfg.name, verdict, tuple(total.witnesses), stats, exhaustive_first,
                              tuple(resume) if resume is not None else None)


@dataclass(frozen=True)
class RecordReport:
    result: ReducibilityResult
    seconds: float


def check_file(path, **opts) -> Iterator[RecordReport]:
    """One report per record in file order. The whole file is parsed first,
    so a malformed record stops the run before any checking starts."""
    with open(path, "rb") as fh:
        cfgs = parse_config_bytes(fh.read())
    for cfg in cfgs:
        t0 = time.perf_counter()
        result = check_reducible(cfg, **opts)
        yield RecordReport(result, time.perf_counter() - t0)


def report_json(reports: Sequence[RecordReport], *, timing: bool = False) -> str:
    rows = []
    for rep in reports:
        row = rep.result.to_json()
        if timing:
            row["seconds"] = round(rep.seconds, 6)
        rows.append(row)
    return json.dumps({"records": rows}, indent=2, sort_keys=True)


__all__ = [
    "CheckTables",
    "ReducibilityResult",
    "RecordReport",
    "Stats",
    "Witness",
    "apply_patterns",
    "check_file",
    "check_reducible",
    "enumerate_precolorings",
    "partitions",
    "precoloring_consistent",
    "region_from",
    "report_json",
]
