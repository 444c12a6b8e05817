"""One line per acceptance criterion, printed to the terminal as
``criterion N: PASS|FAIL  <detail>``; each test also asserts its criterion."""

import random
import re
import subprocess
import sys
import time

import pytest

from subcubic_packing.cli import main, sample_config_bytes
from subcubic_packing.config import OUTER_PATTERNS, format_configs, parse_config_bytes
from subcubic_packing.discharging import RotationSystem, audit, ten_plus_violations, trace_faces
from subcubic_packing.named import GADGET_V1, drawn_graph, petersen, sharpness_gadget
from subcubic_packing.packing import ColorableError, PackingSpec, extend, prove_uncolorable, validate_sharpness_gadget, verify
from subcubic_packing.reducibility import check_reducible

from .conftest import brute_colorable, random_config, random_subcubic
from .test_config import PUBLISHED_LISTING
from .test_discharging import _planar_embeddings
from .test_reducibility import _stats, brute_force, oracle_corpus


@pytest.fixture
def say(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return emit


def test_criterion_1_petersen(say):
    t0 = time.perf_counter()
    try:
        cert = prove_uncolorable(petersen(), PackingSpec((1, 2, 2, 2, 2, 2)))
        refuted = cert.exhaustive
    except ColorableError:
        refuted = False
    secs = time.perf_counter() - t0
    spec7 = PackingSpec((1, 2, 2, 2, 2, 2, 2))
    col = extend(petersen(), spec7)
    ok = refuted and secs < 10 and col is not None and verify(petersen(), spec7, col).valid
    say(1, ok, f"(1,2^5) refuted exhaustively in {secs:.3f}s; (1,2^6) coloring {col}")


def test_criterion_2_sharpness(say):
    t0 = time.perf_counter()
    rep = validate_sharpness_gadget(sharpness_gadget(), GADGET_V1)
    secs = time.perf_counter() - t0
    ok = rep.passed and secs < 60
    say(2, ok, f"validator {'passed' if rep.passed else rep.failed()} in {secs:.3f}s "
               f"(both directions together), refutation {rep.refutation_nodes} nodes")


def test_criterion_3_sample_file(say, tmp_path, capsys):
    data = sample_config_bytes()
    (cfg,) = parse_config_bytes(data)
    shape = (cfg.name == "C6C5C6_typeII_extra_edge" and cfg.T == 9 and cfg.n == 40
             and cfg.base.edges < cfg.extra.edges)
    path = tmp_path / "sample.txt"
    path.write_bytes(data)
    t0 = time.perf_counter()
    code = main(["check-config", str(path)])
    out = capsys.readouterr().out
    secs = time.perf_counter() - t0
    rng = random.Random(31)
    small = next(c for c in (random_config(rng, n_max=12, t_max=2) for _ in range(100)) if c.T == 2)
    t1 = time.perf_counter()
    check_reducible(small)
    small_secs = time.perf_counter() - t1
    ok = shape and code == 0 and out == "'C6C5C6_typeII_extra_edge' Reducible\n" and small_secs < 60
    say(3, ok, f"sample printed {out.strip()!r} exit {code} in {secs:.0f}s; "
               f"synthetic {small.n}-vertex record in {small_secs:.3f}s")


def test_criterion_4_solver_oracle(say):
    rng = random.Random(404)
    specs = [(1, 2), (1, 2, 2), (2, 2, 2), (1, 2, 2, 2)]
    total = agree = 0
    for i in range(240):
        g = random_subcubic(rng, rng.randint(1, 8))
        radii = specs[i % 4]
        ours = extend(g, PackingSpec(radii))
        valid = ours is None or verify(g, PackingSpec(radii), ours).valid
        agree += valid and (ours is not None) == brute_colorable(g, radii)
        total += 1
    say(4, agree == total, f"{agree}/{total} graphs agree with full enumeration")


def test_criterion_5_checker_oracle(say):
    corpus = oracle_corpus()
    agree = 0
    for cfg in corpus:
        both = True
        for mode in (False, True):
            verdict, witness, stats = brute_force(cfg, mode)
            res = check_reducible(cfg, exhaustive_first=mode)
            both &= (res.verdict, res.witness, _stats(res)) == (verdict, witness, stats)
        agree += both
    verdicts = {brute_force(c, False)[0] for c in corpus}
    ok = agree == len(corpus) and len(corpus) >= 50 and max(c.n for c in corpus) <= 12
    say(5, ok, f"{agree}/{len(corpus)} configurations agree in both modes; verdicts seen {sorted(verdicts)}")


def test_criterion_6_pattern_table(say):
    listed = [tuple(map(int, m)) for m in re.findall(r"\{(\d),(\d),(\d)\}", PUBLISHED_LISTING)]
    ok = len(listed) == 30 and list(OUTER_PATTERNS) == listed
    say(6, ok, f"{len(OUTER_PATTERNS)} entries, order {'matches' if ok else 'differs'}")


def test_criterion_7_discharging(say):
    problems = []
    for name in ("k4", "cube", "dodecahedron", "truncated_tetrahedron"):
        g, rot = drawn_graph(name)
        rep = audit(g, RotationSystem(g, rot))
        if rep.euler_total_q != -48 or not rep.conserved:
            problems.append(name)
    g, rot = drawn_graph("truncated_tetrahedron")
    finals = sorted(r.final_q for r in audit(g, RotationSystem(g, rot)).faces)
    if finals != [-12] * 4 + [0] * 4:
        problems.append("truncated tetrahedron charges")
    faces_checked = 0
    for g, rot in _planar_embeddings(150, seed=77):
        rep = audit(g, RotationSystem(g, rot))
        if not rep.conserved or rep.formula_mismatches:
            problems.append(f"embedding of {g.n} vertices")
        faces_checked += sum(r.length >= 7 for r in rep.faces)
        assert len(trace_faces(g, RotationSystem(g, rot))) == len(rep.faces)
    bad_lengths = [L for L in range(10, 21) if ten_plus_violations(L)]
    ok = not problems and not bad_lengths and faces_checked > 0
    say(7, ok, f"solids sum to -12, conservation and formula hold ({faces_checked} faces of length >= 7 "
               f"in 150 fuzzed embeddings), 10..20 inequality violations {bad_lengths}; problems {problems}")


def test_criterion_8_determinism(say, tmp_path):
    rng = random.Random(8)
    corpus = [random_config(rng, n_max=13, t_max=3, name=f"syn{i}") for i in range(12)]
    path = tmp_path / "corpus.cfg"
    path.write_text(format_configs(corpus))
    outs = []
    for workers in ("1", "8"):
        proc = subprocess.run([sys.executable, "-m", "subcubic_packing", "check-config", str(path), "--json",
                               "--workers", workers, "--witness-limit", "3"], capture_output=True)
        outs.append((proc.returncode, proc.stdout))
    ok = outs[0] == outs[1] and outs[0][0] in (0, 1) and len(outs[0][1]) > 0
    say(8, ok, f"1 and 8 workers give {'byte-identical' if outs[0] == outs[1] else 'different'} JSON "
               f"({len(outs[0][1])} bytes, {len(corpus)} records, exit {outs[0][0]})")
