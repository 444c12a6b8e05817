import random
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subcubic_packing.graph import Graph
from subcubic_packing.named import complete, cycle, petersen, sharpness_doubled, sharpness_gadget, GADGET_V1
from subcubic_packing.packing import (
    GOOD_SPEC,
    ColorableError,
    ColoringError,
    InvalidPartialError,
    PackingSpec,
    double_gadget,
    extend,
    prove_uncolorable,
    sdr_assign,
    validate_sharpness_gadget,
    verify,
)

from .conftest import brute_colorable, random_subcubic

ORACLE_SPECS = [(1, 2), (1, 2, 2), (2, 2, 2), (1, 2, 2, 2)]


def test_spec_parse_and_validation():
    assert PackingSpec.parse("1, 2,2").radii == (1, 2, 2)
    for bad in ("", "2,1", "0,1", "1,x"):
        with pytest.raises(ColoringError):
            PackingSpec.parse(bad)


def test_verify_c4_reports_the_close_pair():
    rep = verify(cycle(4), PackingSpec((1, 2)), [2, 1, 2, 1])
    assert not rep.valid
    assert [(v.color, v.u, v.v, v.dist) for v in rep.violations] == [(2, 0, 2, 2)]


def test_verify_k3_and_length_errors():
    assert verify(complete(3), PackingSpec((1, 1, 1)), [1, 2, 3]).valid
    with pytest.raises(ColoringError):
        verify(complete(3), PackingSpec((1, 1, 1)), [1, 2])
    with pytest.raises(ColoringError):
        verify(complete(3), PackingSpec((1, 1, 1)), [1, 2, 4])


def test_verify_ignores_uncoloured_and_disconnected_pairs():
    g = Graph(3, [(0, 1)])
    assert verify(g, PackingSpec((2,)), [1, 0, 1]).valid


def test_petersen_needs_a_seventh_colour():
    assert extend(petersen(), GOOD_SPEC) is None
    seven = PackingSpec((1,) + (2,) * 6)
    col = extend(petersen(), seven)
    assert col is not None and verify(petersen(), seven, col).valid


def test_extend_keeps_partial_and_rejects_bad_partial():
    g = cycle(6)
    spec = PackingSpec((1, 2, 2))
    col = extend(g, spec, [0, 0, 3, 0, 0, 0])
    assert col is not None and col[2] == 3 and verify(g, spec, col).valid
    with pytest.raises(InvalidPartialError):
        extend(g, spec, [2, 0, 2, 0, 0, 0])


def test_extend_is_first_in_order():
    # free vertices filled in increasing id, colours tried 1..k
    assert extend(cycle(4), PackingSpec((1, 1))) == (1, 2, 1, 2)


def test_solver_oracle_200_graphs():
    rng = random.Random(2024)
    checked = disagreements = 0
    seen_both = set()
    while checked < 240:
        g = random_subcubic(rng, rng.randint(1, 8))
        radii = ORACLE_SPECS[checked % len(ORACLE_SPECS)]
        spec = PackingSpec(radii)
        ours = extend(g, spec)
        ref = brute_colorable(g, radii)
        if ours is not None:
            assert verify(g, spec, ours).valid
        disagreements += (ours is not None) != ref
        seen_both.add(ref)
        checked += 1
    assert disagreements == 0
    assert seen_both == {True, False}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 7))
def test_refutation_agrees_with_extend(seed, n):
    g = random_subcubic(random.Random(seed), n)
    spec = PackingSpec((1, 2, 2))
    found = extend(g, spec)
    for sym in (False, True):
        if found is None:
            assert prove_uncolorable(g, spec, break_symmetry=sym).exhaustive
        else:
            with pytest.raises(ColorableError) as err:
                prove_uncolorable(g, spec, break_symmetry=sym)
            assert verify(g, spec, err.value.coloring).valid


def test_petersen_refutation_is_fast():
    t0 = time.perf_counter()
    cert = prove_uncolorable(petersen(), GOOD_SPEC)
    assert cert.exhaustive and cert.node_count > 0
    assert time.perf_counter() - t0 < 10


def test_symmetry_roots():
    cert = prove_uncolorable(petersen(), GOOD_SPEC, break_symmetry=True)
    assert cert.roots == (1, 2)


def test_sdr():
    assert sdr_assign([{1, 2}, {1}]) == (2, 1)
    assert sdr_assign([{1}, {1}]) is None
    assert sdr_assign([]) == ()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.integers(0, 5), max_size=4), max_size=5))
def test_sdr_matches_hall(demands):
    import itertools
    hall = all(len(set().union(*sub)) >= len(sub)
               for r in range(1, len(demands) + 1)
               for sub in itertools.combinations(demands, r))
    pick = sdr_assign(demands)
    assert (pick is not None) == hall
    if pick is not None:
        assert len(set(pick)) == len(pick)
        assert all(x in d for x, d in zip(pick, demands))


def test_sharpness_gadget_validates():
    t0 = time.perf_counter()
    rep = validate_sharpness_gadget(sharpness_gadget(), GADGET_V1)
    assert rep.passed, rep.failed()
    assert time.perf_counter() - t0 < 60
    assert double_gadget(sharpness_gadget(), GADGET_V1) == sharpness_doubled()


def test_sharpness_validator_rejects_wrong_gadgets():
    assert "order_7" in validate_sharpness_gadget(cycle(5), 0).failed()
    g = sharpness_gadget()
    assert "v1_degree_2" in validate_sharpness_gadget(g, 1).failed()
    assert not validate_sharpness_gadget(g, 99).passed
