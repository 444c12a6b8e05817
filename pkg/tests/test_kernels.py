import random

import numpy as np
import pytest

from subcubic_packing import _kernels_py as pure
from subcubic_packing.packing import ConflictTable, PackingSpec

from .conftest import random_subcubic

compiled = pytest.importorskip("subcubic_packing._kernels", reason="extension not built")

SPECS = ["1,2", "1,2,2", "2,2,2", "1,2,2,2", "1,1,2", "1,2,2,2,2,2"]


def test_selected_backend_is_compiled_when_built():
    from subcubic_packing import kernels

    assert kernels.BACKEND == "compiled"


def test_extend_coloring_agrees():
    rng = random.Random(21)
    for _ in range(300):
        g = random_subcubic(rng, rng.randint(1, 14))
        table = ConflictTable(g, PackingSpec.parse(rng.choice(SPECS)))
        start = [0] * g.n
        for v in rng.sample(range(g.n), rng.randint(0, min(3, g.n))):
            start[v] = rng.randint(1, table.spec.k)
        a, b = list(start), list(start)
        ra = pure.extend_coloring(a, table.spec.k, table.radius_index, table.offsets, table.targets)
        rb = compiled.extend_coloring(b, table.spec.k, table.radius_index, table.offsets, table.targets)
        assert ra == rb and a == b


def _reference_minimal(rows, order, bounds):
    keep = [0] * len(rows)
    for g in range(len(bounds) - 1):
        kept = []
        for r in order[bounds[g]:bounds[g + 1]]:
            bits = [int(w) for w in rows[r]]
            if any(all(k & ~b == 0 for k, b in zip(prev, bits)) for prev in kept):
                continue
            kept.append(bits)
            keep[r] = 1
    return keep


def test_minimal_rows_agree():
    rng = np.random.default_rng(4)
    for _ in range(200):
        n, w = int(rng.integers(1, 60)), int(rng.integers(1, 4))
        # sparse rows so subset relations actually occur
        rows = (rng.random((n, w * 64)) < 0.05)
        words = np.ascontiguousarray(np.packbits(rows, axis=1)).view(np.uint64)
        groups = np.sort(rng.integers(0, 4, n))
        order = np.lexsort((rows.sum(axis=1), groups)).astype(np.int64)
        g_sorted = groups[order]
        bounds = np.r_[np.flatnonzero(np.r_[True, g_sorted[1:] != g_sorted[:-1]]), n].astype(np.int64)
        ref = _reference_minimal(words, order, bounds)
        assert list(pure.minimal_rows(words, order, bounds)) == ref
        assert list(compiled.minimal_rows(words, order, bounds)) == ref
