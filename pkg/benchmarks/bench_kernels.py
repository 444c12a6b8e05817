"""Time the compiled kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both backends are imported directly, so the result does not depend on
SUBCUBIC_PACKING_PURE. Each workload is also checked for equal output.
"""

import argparse
import time

import numpy as np

from subcubic_packing import _kernels_py as pure
from subcubic_packing.named import build_named, petersen
from subcubic_packing.packing import ConflictTable, PackingSpec

try:
    from subcubic_packing import _kernels as compiled
except ImportError:
    compiled = None


def refutation_workload(graph, radii):
    table = ConflictTable(graph, PackingSpec(radii))

    def run(mod):
        coloring = [0] * graph.n
        return mod.extend_coloring(coloring, table.spec.k, table.radius_index, table.offsets, table.targets)

    return run


def minimal_rows_workload(n_rows, bits, density, seed=0):
    rng = np.random.default_rng(seed)
    rows = rng.random((n_rows, bits)) < density
    words = np.ascontiguousarray(np.packbits(rows, axis=1)).view(np.uint64)
    order = np.argsort(rows.sum(axis=1), kind="stable").astype(np.int64)
    bounds = np.array([0, n_rows], dtype=np.int64)

    def run(mod):
        return bytes(mod.minimal_rows(words, order, bounds))

    return run


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        raise SystemExit("compiled extension not built; reinstall with Cython available")
    workloads = [
        ("petersen (1,2^5) refutation", refutation_workload(petersen(), (1, 2, 2, 2, 2, 2))),
        ("doubled gadget (1,2^4) refutation", refutation_workload(build_named("sharpness_doubled"), (1, 2, 2, 2, 2))),
        ("minimal rows 4000 x 256", minimal_rows_workload(4000, 256, 0.08)),
        ("minimal rows 20000 x 64", minimal_rows_workload(20000, 64, 0.15)),
    ]
    print(f"{'workload':38} {'pure s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, run in workloads:
        tp, out_p = best_of(lambda: run(pure), args.repeat)
        tc, out_c = best_of(lambda: run(compiled), args.repeat)
        if out_p != out_c:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:38} {tp:10.4f} {tc:11.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
