"""Transitive closure and reduction of bidirected graphs, with signed-graph balance and frame-matroid analysis."""
from __future__ import annotations

from .bdg import export_dot, parse_bdg, serialize_bdg
from .closure import (
    ClosureResult,
    closure_keys,
    implied_keys,
    is_transitive,
    relative_closure,
    transitive_closure,
)
from .errors import (
    BidigraphError,
    CapExceededError,
    GraphError,
    MalformedChainError,
    NonUniqueReductionError,
    NotPartialGraphError,
    OrderingError,
    ParseError,
    UnknownEdgeError,
    UnknownVertexError,
)
from .graph import (
    MINUS,
    PLUS,
    BidirectedGraph,
    Edge,
    balanced_component_count,
    balancing_switch_set,
    edge_key,
    edge_weight,
    is_all_negative,
    is_all_positive,
    is_antibalanced,
    is_balanced,
    signature,
    sources_and_sinks,
    switch,
    switch_key,
    switching_function,
    vertex_weight,
)
from .matroid import (
    CircuitType,
    classify_circuit,
    elementary_cycles,
    enumerate_circuits,
    is_matroid_connected,
    is_quasibalanced,
    matroid_report,
    quasibalance_witness,
    rank,
)
from .reduction import (
    ReductionResult,
    all_reductions,
    is_transitive_reduction,
    no_long_bpath_profile,
    redundant_edges,
    transitive_reduction,
)
from .states import (
    BPath,
    BWalk,
    CyclicKind,
    StateDigraph,
    build_state_digraph,
    classify_cyclic_bpath,
    enumerate_bpaths,
    enumerate_bpaths_from,
    exists_bwalk,
    find_bcircuit,
    find_bpath,
    has_bcircuit,
    is_bcircuit,
    is_bpath,
    is_bwalk,
    make_walk,
)

__version__ = "0.1.0"


def load_example(name: str) -> BidirectedGraph:
    """One of the bundled graphs: ``path``, ``triangle``, ``circuit`` or ``quasi``."""
    from importlib.resources import files

    return parse_bdg(files(__package__).joinpath("data", f"{name}.bdg").read_text(encoding="utf-8"))
