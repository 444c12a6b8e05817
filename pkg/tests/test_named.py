import networkx as nx
import pytest

from subcubic_packing.graph import GraphError
from subcubic_packing.named import NAMES, UnknownNameError, build_named, complete, cycle, petersen

from .conftest import to_nx


def test_petersen_is_the_petersen_graph():
    g = petersen()
    assert (g.n, g.m) == (10, 15)
    assert nx.is_isomorphic(to_nx(g), nx.petersen_graph())


@pytest.mark.parametrize("name, reference", [
    ("cube", nx.hypercube_graph(3)),
    ("dodecahedron", nx.dodecahedral_graph()),
    ("truncated_tetrahedron", nx.truncated_tetrahedron_graph()),
])
def test_solids_match_networkx(name, reference):
    assert nx.is_isomorphic(to_nx(build_named(name)), reference)


def test_sized_families():
    assert build_named("cycle(7)") == cycle(7) == build_named("cycle", 7)
    assert build_named(" complete ( 4 ) ").m == 6
    assert complete(0).n == 0
    with pytest.raises(UnknownNameError):
        build_named("cycle")
    with pytest.raises(UnknownNameError):
        build_named("heawood")
    with pytest.raises(GraphError):
        cycle(2)


def test_every_listed_name_builds():
    for name in NAMES:
        obj = build_named(name.replace("(n)", "(5)"))
        assert obj is not None


def test_sharpness_pair_shape():
    gadget = build_named("sharpness_gadget")
    doubled = build_named("sharpness_doubled")
    assert sorted(gadget.degree(v) for v in range(7)) == [2] + [3] * 6
    assert doubled.n == 14 and doubled.max_degree() == 3
    assert doubled.m == 2 * gadget.m + 1
