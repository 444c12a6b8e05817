"""Packing colourings of subcubic graphs: solver, configuration checker and
discharging auditor."""

from .config import (
    OUTER_COUNT,
    OUTER_COUNT_FIRST,
    OUTER_PATTERNS,
    ConfigError,
    ConfigParseError,
    Configuration,
    format_config,
    parse_config_bytes,
    parse_config_file,
)
from .graph import (
    DisconnectedGraphError,
    DistanceOracle,
    Graph,
    GraphError,
    SizeLimitError,
    distance_oracle,
    find_edge_cuts,
    power_graph,
    structure_report,
)
from .kernels import BACKEND
from .packing import (
    GOOD_SPEC,
    ColorableError,
    InvalidPartialError,
    PackingSpec,
    ValidationReport,
    extend,
    prove_uncolorable,
    sdr_assign,
    validate_sharpness_gadget,
    verify,
)
from .reducibility import (
    check_file,
    check_reducible,
    enumerate_precolorings,
    precoloring_consistent,
)

__version__ = "0.1.0"
