import random
import re

import pytest

from subcubic_packing.cli import sample_config_bytes
from subcubic_packing.config import (
    OUTER_COUNT,
    OUTER_COUNT_FIRST,
    OUTER_PATTERNS,
    ConfigError,
    ConfigParseError,
    Configuration,
    format_config,
    format_configs,
    parse_config_bytes,
)
from subcubic_packing.graph import Graph
from subcubic_packing.named import build_named

from .conftest import random_config

# Typed in again from the C++ initializer, braces and all, so a slip in the
# module table cannot also hide here.
PUBLISHED_LISTING = """
{6,1,2},{6,1,3},{6,1,4},{6,1,5},
{5,1,2},{5,1,3},{5,1,4},{5,1,6},
{4,1,2},{4,1,3},{4,1,5},{4,1,6},
{3,1,2},{3,1,4},{3,1,5},{3,1,6},
{2,1,3},{2,1,4},{2,1,5},{2,1,6},
{1,2,3},{1,2,4},{1,2,5},{1,2,6},{1,3,4},{1,3,5},{1,3,6},{1,4,5},{1,4,6},{1,5,6}
"""


def test_pattern_table_matches_listing():
    listed = [tuple(map(int, m)) for m in re.findall(r"\{(\d),(\d),(\d)\}", PUBLISHED_LISTING)]
    assert len(listed) == 30 == OUTER_COUNT
    assert list(OUTER_PATTERNS) == listed
    assert OUTER_COUNT_FIRST == 2


def test_pattern_table_shapes():
    for i, (b, p1, p2) in enumerate(OUTER_PATTERNS):
        if i < 20:
            assert b != 1 and p1 == 1 and p2 not in (1, b)
        else:
            assert b == 1 and 1 < p1 < p2


def test_sample_file():
    data = sample_config_bytes()
    assert len(data) == 3314
    (cfg,) = parse_config_bytes(data)
    assert cfg.name == "C6C5C6_typeII_extra_edge"
    assert cfg.T == 9 and cfg.n == 40
    assert cfg.base.edges < cfg.extra.edges
    # the published extra graph has a vertex of degree 4
    assert any("not subcubic" in d for d in cfg.diagnostics())


def test_empty_and_blank_files():
    assert parse_config_bytes(b"") == []
    assert parse_config_bytes(b"\n\n  \n") == []


def _tiny_record(entry="2"):
    return f"tiny\n1\n0 1 2\n3\n{entry} 2\n1\n3\n2 2\n2\n".encode()


def test_tiny_record():
    (cfg,) = parse_config_bytes(_tiny_record())
    assert cfg.triples == ((0, 1, 2),)
    assert cfg.base.edges == {(0, 1), (0, 2)}
    assert cfg.extra.edges == {(0, 1), (0, 2), (1, 2)}


@pytest.mark.parametrize(
    "data, fragment",
    [
        (_tiny_record("3"), "expected 1 or 2"),
        (b"tiny\n1\n0 1 2\n3\n2 2\n", "truncated"),
        (b"tiny\n1\n0 1 5\n3\n2 2 1\n3\n2 2 1\n", "not below"),
        (b"tiny\n1\n0 1 1\n3\n2 2 1\n3\n2 2 1\n", "repeated"),
        (b"tiny\n1\n0 1 2\n3\n2 2 1\n4\n2 2 1\n", "extra graph has 4"),
        (b"tiny\nx\n", "triple count"),
        (b"tiny\n1\n0 1 2\n3\n2 2 2\n3\n2 2 1\n", "drops base edges"),
    ],
)
def test_parse_errors_have_offsets(data, fragment):
    with pytest.raises(ConfigParseError) as err:
        parse_config_bytes(data)
    assert fragment in str(err.value)
    assert 0 <= err.value.offset <= len(data)


def test_offset_points_at_bad_entry():
    data = _tiny_record("3")
    with pytest.raises(ConfigParseError) as err:
        parse_config_bytes(data)
    assert data[err.value.offset:err.value.offset + 1] == b"3"


def test_configuration_rejects_structural_errors():
    g = Graph(3, [(0, 1)])
    with pytest.raises(ConfigError):
        Configuration("x", g, Graph(3), ())
    with pytest.raises(ConfigError):
        Configuration("x", g, g, ((0, 1, 5),))


def test_round_trip_sample_and_synthetic():
    (cfg,) = parse_config_bytes(sample_config_bytes())
    assert parse_config_bytes(format_config(cfg).encode()) == [cfg]
    rng = random.Random(7)
    cfgs = [random_config(rng, name=f"r{i}") for i in range(20)]
    assert parse_config_bytes(format_configs(cfgs).encode()) == cfgs


def test_crlf_and_two_records():
    text = (format_config(build_named("cfg_3_5_3")) + "\n\n" + format_config(build_named("cfg_3_7_4")))
    cfgs = parse_config_bytes(text.replace("\n", "\r\n").encode())
    assert [c.name for c in cfgs] == ["cfg_3_5_3", "cfg_3_7_4"]


@pytest.mark.parametrize("name", ["cfg_3_7_4", "cfg_5_5_5_I", "cfg_3_5_3"])
def test_named_configurations_are_well_formed(name):
    cfg = build_named(name)
    assert cfg.base.max_degree() <= 3
    assert cfg.diagnostics() == []
    for b, p1, p2 in cfg.triples:
        assert cfg.base.degree(p1) == 1 and cfg.base.degree(p2) == 1
        assert cfg.base.degree(b) == 3
