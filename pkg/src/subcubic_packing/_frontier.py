"""Decide "some consistent precoloring in a box fails to extend" without
enumerating the box.

The free vertices are swept in a fixed order. At every step the state is a
family of sets: for each way the adversary may have chosen the patterns of
the triples seen so far, the set of colourings of the current frontier that
are still completable on the swept part. Only inclusion-minimal sets matter
(a smaller set fails whenever a larger one does, because every later step is
monotone), so the family is cut down to its minimal members after each step.
Pattern choices for triples not yet reached are restricted by pairwise
consistency, tracked per family member as one 30-bit mask per pending triple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .kernels import minimal_rows

NPAT = 30
# target number of bool cells materialised per branching chunk
_CHUNK_CELLS = 200_000_000


@dataclass
class _Event:
    kind: str  # "intro", "forget" or "branch"
    item: int
    parent: np.ndarray | None = None  # intro: column -> column in previous universe
    groups: tuple | None = None  # forget: (column permutation, reduceat starts)
    window: np.ndarray | None = None  # branch: NPAT x |U| survivors per pattern


def _greedy_order(free, sq, start):
    """Sweep order starting at ``start``; each step adds the vertex that keeps
    the live frontier smallest."""
    intro = [start]
    rest = set(free) - {start}
    while rest:
        inset = set(intro)
        best = None
        for x in sorted(rest):
            trial = inset | {x}
            live = sum(1 for y in trial if not (sq[y] <= trial))
            touch = -len(sq[x] & inset)
            key = (live, touch, x)
            if best is None or key < best[0]:
                best = (key, x)
        intro.append(best[1])
        rest.discard(best[1])
    return intro


def _schedule(order, sq, windows, triples_of):
    intro, applied, gone = set(), set(), set()
    events = []

    def forgets():
        for y in sorted(intro - gone):
            if sq[y] <= intro and all(j in applied for j in triples_of[y]):
                events.append(("forget", y))
                gone.add(y)

    def branches():
        for j, win in enumerate(windows):
            if j not in applied and win <= intro:
                applied.add(j)
                events.append(("branch", j))
                forgets()

    branches()
    for x in order:
        intro.add(x)
        events.append(("intro", x))
        forgets()
        branches()
    return events


def _row_factor(applied, live, windows, linked_to, pinned):
    """Guess at how many family rows one frontier colouring splits into: a
    branched triple still matters while part of its window is live or while
    a linked partner is pending, and then each of its patterns may leave a
    different row behind. Pinned triples have one pattern."""
    factor = 1
    for j in applied:
        if j not in pinned and (windows[j] & live or linked_to[j] - applied):
            factor *= NPAT
    return factor


def _step(intro, x, sq, windows, triples_of, linked_to, pinned):
    """Introduce ``x`` into a sweep that has introduced ``intro`` so far and
    return the cost-model charge for the branches this triggers, plus the
    widest frontier reached. Everything else about the sweep state follows
    from ``intro``."""
    before = _state_of(intro, sq, windows, triples_of)
    after_set = intro | {x}
    applied, gone = set(before[0]), set(before[1])
    live = set(after_set - gone)
    cost = 0

    def forgets():
        for y in sorted(live):
            if sq[y] <= after_set and all(j in applied for j in triples_of[y]):
                gone.add(y)
                live.discard(y)

    peak = len(live)
    forgets()
    for j, win in enumerate(windows):
        if j not in applied and win <= after_set:
            applied.add(j)
            cost += 36 ** len(live) * _row_factor(applied, live, windows, linked_to, pinned)
            forgets()
    return cost, peak


_STATE_CACHE: dict = {}


def _state_of(intro, sq, windows, triples_of):
    hit = _STATE_CACHE.get(intro)
    if hit is None:
        events = _schedule(sorted(intro), sq, windows, triples_of)
        hit = (frozenset(i for k, i in events if k == "branch"), frozenset(i for k, i in events if k == "forget"))
        _STATE_CACHE[intro] = hit
    return hit


def _cheapest_order(free, sq, windows, triples_of, linked_to, pinned, max_width, beam=1 << 14):
    """Cheapest sweep order under the cost model among orders whose frontier
    never exceeds ``max_width``. The charge for adding a vertex depends only
    on the set already introduced, so a search over sets is exact as long as
    every reachable set fits in the beam."""
    _STATE_CACHE.clear()
    layer = {frozenset(): (0, ())}
    for _ in free:
        grown: dict = {}
        for intro, (cost, prefix) in layer.items():
            for x in free:
                if x in intro:
                    continue
                charge, peak = _step(intro, x, sq, windows, triples_of, linked_to, pinned)
                if peak > max_width:
                    continue
                total = cost + charge
                key = intro | {x}
                if key not in grown or (total, prefix + (x,)) < grown[key]:
                    grown[key] = (total, prefix + (x,))
        if len(grown) > beam:
            grown = dict(sorted(grown.items(), key=lambda kv: kv[1])[:beam])
        layer = grown
    _STATE_CACHE.clear()
    return [list(prefix) for _, prefix in layer.values() if len(prefix) == len(free)]


def _frontier_cost(events, windows, linked_to, pinned):
    """Rough work estimate, widest frontier first. At a branch the family
    holds up to one row per frontier colouring and per pattern choice of the
    triples that still matter (see ``_row_factor``), and reducing it is about
    quadratic in the frontier size, hence 36 per live vertex."""
    live, done, width, cost = set(), set(), 0, 0
    for kind, item in events:
        if kind == "intro":
            live.add(item)
        elif kind == "forget":
            live.discard(item)
        else:
            done.add(item)
            cost += 36 ** len(live) * _row_factor(done, live, windows, linked_to, pinned)
        width = max(width, len(live))
    return (width, cost)


class _OverBudget(Exception):
    pass


class FrontierPlan:
    """Static part of the sweep for one configuration; reusable across boxes."""

    def __init__(self, tables, order=None, pinned=(), trial_boxes=None, max_trials=8, finalists=5):
        """Without ``order`` the sweep order is chosen here. Candidates come
        from greedy growth and from a search under a cost model that treats
        the ``pinned`` triples as fixed to one pattern. The model is only a
        rough guide, so when ``trial_boxes`` are given the best few candidates
        race on the first box, the leaders and the model's favourite race
        again on the next, and so on; the cheapest on the last box wins.
        Small boxes are cheap but flatter the orders that branch early, which
        is why the final race runs on a bigger one."""
        self.tables = tables
        pinned = frozenset(pinned)
        free = tables.free
        self.T = tables.T
        windows = [set(w) for w in tables.windows]
        sq = {x: set(tables.core_near[x]) for x in free}
        triples_of = {x: [j for j in range(self.T) if x in windows[j]] for x in free}
        linked_to = {j: set() for j in range(self.T)}
        for j, j2 in tables.linked:
            linked_to[j].add(j2)
            linked_to[j2].add(j)
        if order is not None:
            candidates = [list(order)]
        else:
            candidates = [_greedy_order(free, sq, start) for start in free] or [[]]
            cap = min(_frontier_cost(_schedule(c, sq, windows, triples_of), windows, linked_to, pinned)[0]
                      for c in candidates)
            candidates += _cheapest_order(free, sq, windows, triples_of, linked_to, pinned, cap)
            candidates += [sorted(free), sorted(free, reverse=True)]
        ranked, seen = [], set()
        for cand in candidates:
            events = _schedule(cand, sq, windows, triples_of)
            key = tuple(events)
            if key in seen:
                continue
            seen.add(key)
            ranked.append((_frontier_cost(events, windows, linked_to, pinned), cand, events))
        ranked.sort(key=lambda r: r[0])
        self.trial_work = None
        if trial_boxes and len(ranked) > 1:
            extremes = (sorted(free), sorted(free, reverse=True))
            racers = ranked[: max_trials - 2] + [r for r in ranked[max_trials - 2:] if r[1] in extremes]
            for stage, box in enumerate(trial_boxes):
                timed = self._trial(racers, box)
                if stage + 1 < len(trial_boxes):
                    racers = [entry for _, entry in timed[:finalists]]
                    if ranked[0] not in racers:
                        racers.append(ranked[0])
            self.trial_work = timed[0][0]
            ranked = [timed[0][1]]
        (self.width, self.cost), self.order, events = ranked[0]
        self._build(events)

    def _trial(self, racers, box):
        """Race ``racers`` on ``box`` under a budget that grows fourfold until
        someone finishes. Returns (work, entry) for the finishers, cheapest
        first; whoever ran out of budget is slower than all of them."""
        budget = 1 << 18
        while True:
            done = []
            for entry in racers:
                self._build(entry[2])
                work = self._sweep(box, budget)[1]
                if work is not None:
                    done.append((work, entry))
            if done:
                done.sort(key=lambda d: d[0])
                return done
            budget <<= 2

    def _build(self, schedule):
        tb = self.tables
        frontier: list[int] = []
        universe = [()]
        self.events: list[_Event] = []
        self.max_universe = 1
        for kind, item in schedule:
            if kind == "intro":
                x = item
                rows, parent = [], []
                clash = [[tb.core_conflict(x, y, k) for k in range(7)] for y in frontier]
                for i, u in enumerate(universe):
                    for k in range(1, 7):
                        if any(u[a] == k and clash[a][k] for a in range(len(frontier))):
                            continue
                        rows.append(u + (k,))
                        parent.append(i)
                frontier = frontier + [x]
                universe = rows
                self.events.append(_Event("intro", x, parent=np.array(parent, dtype=np.int64)))
            elif kind == "forget":
                a = frontier.index(item)
                proj = [u[:a] + u[a + 1:] for u in universe]
                uniq = sorted(set(proj))
                pos = {u: i for i, u in enumerate(uniq)}
                idx = np.array([pos[p] for p in proj], dtype=np.int64)
                perm = np.argsort(idx, kind="stable")
                starts = np.flatnonzero(np.r_[True, np.diff(idx[perm]) != 0])
                frontier = frontier[:a] + frontier[a + 1:]
                universe = uniq
                self.events.append(_Event("forget", item, groups=(perm, starts)))
            else:
                j = item
                cols = np.array(universe, dtype=np.int64).reshape(len(universe), len(frontier))
                win = np.ones((NPAT, len(universe)), dtype=bool)
                for p in range(NPAT):
                    effect = tb.effect[j][p]
                    for a, x in enumerate(frontier):
                        mask = effect.get(x, 0)
                        if mask:
                            win[p] &= ((mask >> cols[:, a]) & 1) == 0
                self.events.append(_Event("branch", j, window=win))
            self.max_universe = max(self.max_universe, len(universe))
        self.final_universe = len(universe)

    def exists_failure(self, domains) -> bool:
        """True iff some consistent precoloring with pattern indices drawn from
        ``domains`` (one 30-bit mask per triple) fails to extend."""
        return self._sweep(domains, None)[0]

    def _sweep(self, domains, budget):
        """(answer, work). Work charges each reduction its rows in times the
        larger of its rows out and its width in bytes, roughly what the
        reduction costs. Gives (None, None) as soon as work would pass
        ``budget``, checking before each reduction with rows out unknown."""
        tb = self.tables
        T = self.T
        work = 0

        def _reduce(f, c):
            nonlocal work
            rows_in, width = f.shape[0], f.shape[1] // 8 + 1
            if budget is not None and work + rows_in * width > budget:
                raise _OverBudget
            f, c = _reduce_rows(f, c)
            work += rows_in * max(len(f), width)
            if budget is not None and work > budget:
                raise _OverBudget
            return f, c

        start = np.array(prune_domains(tb, domains), dtype=np.int64)
        if T and (start == 0).any():
            return False, work
        try:
            return self._run(start, _reduce), work
        except _OverBudget:
            return None, None

    def _run(self, start, _reduce):
        T = self.T
        fam = np.ones((1, 1), dtype=bool)
        cons = start.reshape(1, T)
        pending = np.ones(T, dtype=bool)
        comp = self.tables.comp_array
        bits = np.arange(NPAT, dtype=np.int64)
        for ev in self.events:
            if ev.kind == "intro":
                fam = fam[:, ev.parent]
            elif ev.kind == "forget":
                perm, starts = ev.groups
                if len(starts):
                    fam = np.logical_or.reduceat(fam[:, perm], starts, axis=1)
                fam, cons = _reduce(fam, cons)
            else:
                j = ev.item
                pending[j] = False
                allowed = ((cons[:, j][:, None] >> bits) & 1).astype(bool)
                fi, pi = np.nonzero(allowed)
                step = max(1, _CHUNK_CELLS // max(1, fam.shape[1]))
                parts_f = [np.zeros((0, fam.shape[1]), dtype=bool)]
                parts_c = [np.zeros((0, T), dtype=np.int64)]
                held = 0
                for s in range(0, len(fi), step):
                    a, b = fi[s:s + step], pi[s:s + step]
                    nf = fam[a] & ev.window[b]
                    nc = cons[a] & comp[j][:, b].T
                    nc[:, j] = 0
                    alive = ~((nc == 0) & pending).any(axis=1)
                    nf, nc = _reduce(nf[alive], nc[alive])
                    parts_f.append(nf)
                    parts_c.append(nc)
                    held += len(nf)
                    if held > step:
                        # merge early so memory stays bounded
                        merged = _reduce(np.concatenate(parts_f), np.concatenate(parts_c))
                        parts_f, parts_c = [merged[0]], [merged[1]]
                        held = len(merged[0])
                fam, cons = _reduce(np.concatenate(parts_f), np.concatenate(parts_c))
            if fam.shape[0] == 0:
                return False
        # a member with no surviving colouring is a failing precoloring
        return bool((~fam.any(axis=1)).any())


_MIX = np.random.default_rng(20240607).integers(1, 2**63, size=4096, dtype=np.uint64) | np.uint64(1)


def _row_hash(words):
    """Cheap 64-bit mix of each row; equal rows hash equal."""
    if words.shape[1] == 0:
        return np.zeros(len(words), dtype=np.uint64)
    mix = np.resize(_MIX, words.shape[1])
    with np.errstate(over="ignore"):
        return (words * mix).sum(axis=1, dtype=np.uint64)


def _reduce_rows(fam, cons):
    """Keep only the inclusion-minimal rows among rows with equal pending masks.

    Rows are sorted by a hash of their masks so that equal masks sit together
    (a hash collision only splits a group, which keeps a few extra rows but
    never drops a needed one), then by popcount inside a group.
    """
    if fam.shape[0] <= 1:
        return fam, cons
    packed = np.packbits(fam, axis=1)
    pad = (-packed.shape[1]) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros((packed.shape[0], pad), np.uint8)], axis=1)
    words = np.ascontiguousarray(packed).view(np.uint64)
    cwords = np.ascontiguousarray(cons).view(np.uint64)
    order = np.lexsort((fam.sum(axis=1), _row_hash(cwords)))
    cs = cwords[order]
    new_group = np.r_[True, np.any(cs[1:] != cs[:-1], axis=1)] if len(cs) else np.zeros(0, bool)
    bounds = np.r_[np.flatnonzero(new_group), len(order)].astype(np.int64)
    mark = minimal_rows(words, np.ascontiguousarray(order, dtype=np.int64), bounds)
    keep = np.frombuffer(bytes(mark), dtype=np.uint8).astype(bool)
    return fam[keep], cons[keep]


def prune_domains(tables, domains) -> list[int]:
    """Drop patterns that clash with themselves or have no compatible partner
    left in some linked triple; repeat until nothing changes."""
    doms = [d & tables.self_ok[j] for j, d in enumerate(domains)]
    comp = tables.comp_array
    partners: dict[int, list[int]] = {}
    for j, j2 in tables.linked:
        partners.setdefault(j, []).append(j2)
        partners.setdefault(j2, []).append(j)
    queue = sorted(partners)
    while queue:
        j = queue.pop(0)
        keep = doms[j]
        for p in range(NPAT):
            if (keep >> p) & 1 and any(int(comp[j, j2, p]) & doms[j2] == 0 for j2 in partners[j]):
                keep &= ~(1 << p)
        if keep != doms[j]:
            doms[j] = keep
            if keep == 0:
                return doms
            queue += [j2 for j2 in partners[j] if j2 not in queue]
    return doms


def all_patterns_mask() -> int:
    return (1 << NPAT) - 1


def box_size(domains) -> int:
    size = 1
    for d in domains:
        size *= bin(d).count("1")
    return size


def box_iter(domains):
    """Pattern-index vectors of a box in lexicographic order."""
    choices = [[p for p in range(NPAT) if (d >> p) & 1] for d in domains]
    return itertools.product(*choices)
