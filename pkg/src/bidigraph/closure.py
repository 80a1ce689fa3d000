"""Transitive closure of bidirected graphs and closure relative to a supergraph."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple, Union

import numpy as np

from .errors import NotPartialGraphError
from .graph import BidirectedGraph, Edge, EdgeKey, edge_key, format_key
from .states import BPath, StateDigraph


@dataclass(frozen=True)
class ClosureResult:
    graph: BidirectedGraph
    added: frozenset
    witness: Dict[EdgeKey, BPath] = field(default_factory=dict)
    added_ids: Tuple = ()

    @property
    def keys(self) -> frozenset:
        return self.graph.keys()


def implied_keys(G: BidirectedGraph, SD: StateDigraph = None) -> frozenset:
    """Every ``{x^a, y^b}`` such that a b-path from ``x^a`` to ``y^b`` exists in ``G``."""
    SD = SD or StateDigraph(G)
    if SD.n_arcs == 0:
        return frozenset()
    reach = SD.reach_all()
    keys = set()
    for s, t in zip(*np.nonzero(reach)):
        x, a = SD.state_of(int(s))
        y, minus_b = SD.state_of(int(t))
        keys.add(edge_key(x, a, y, -minus_b))
    return frozenset(keys)


def closure_keys(G: BidirectedGraph) -> frozenset:
    """Key set of the transitive closure; equals :func:`implied_keys` since every edge is a b-path."""
    return implied_keys(G) | G.keys()


def closure_edge_id(key: EdgeKey) -> str:
    # no commas, so ids stay usable in comma-separated CLI lists
    return "ft:" + format_key(key).replace(",", "/")


def transitive_closure(G: BidirectedGraph) -> ClosureResult:
    """Add one edge per implied key not already realised by an edge of ``G``.

    Added edges come after the original ones, sorted by key, with ids
    ``ft:<key>``; each carries a shortest witness b-path in ``G``.
    """
    SD = StateDigraph(G)
    existing = G.keys()
    added = sorted(implied_keys(G, SD) - existing)
    new_edges = []
    witness = {}
    taken = set(G.edge_ids)
    for key in added:
        (x, a), (y, b) = key
        path = SD.path_to_bpath(SD.shortest_path(SD.state(x, a), SD.state(y, -b)))
        witness[key] = path
        eid = closure_edge_id(key)
        while eid in taken:
            eid += "'"
        taken.add(eid)
        new_edges.append(Edge(eid, x, a, y, b))
    return ClosureResult(G.with_edges(new_edges), frozenset(added), witness, tuple(e.id for e in new_edges))


def is_transitive(G: BidirectedGraph) -> bool:
    return implied_keys(G) <= G.keys()


def _partial_ids(G: BidirectedGraph, H: Union[BidirectedGraph, Iterable]) -> set:
    if isinstance(H, BidirectedGraph):
        if not H.is_partial_graph_of(G):
            raise NotPartialGraphError("H is not a partial graph of G")
        return set(H.edge_ids)
    ids = set(H)
    missing = [eid for eid in ids if eid not in G]
    if missing:
        raise NotPartialGraphError(f"edges not in G: {sorted(map(str, missing))}")
    return ids


def relative_closure(G: BidirectedGraph, H: Union[BidirectedGraph, Iterable]) -> BidirectedGraph:
    """Edges of ``H`` plus every edge of ``G`` whose key the closure of ``H`` contains."""
    ids = _partial_ids(G, H)
    keys = closure_keys(G.partial(ids))
    return G.partial(ids | {e.id for e in G.edges if e.key in keys})
