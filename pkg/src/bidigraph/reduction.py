"""Transitive reduction by ordered elimination, plus uniqueness and redundancy analysis."""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Hashable, Optional, Sequence, Tuple

import numpy as np

from .closure import closure_keys
from .errors import CapExceededError, NonUniqueReductionError, NotPartialGraphError, OrderingError
from .graph import (
    BidirectedGraph,
    Edge,
    is_antibalanced,
    signature,
    sources_and_sinks,
)
from .states import BPath, StateDigraph, has_bcircuit

EXHAUSTIVE_EDGE_BOUND = 12


@dataclass(frozen=True)
class ReductionResult:
    graph: BidirectedGraph
    removed: Tuple[Tuple[Hashable, BPath], ...]
    ordering: Tuple[Hashable, ...]

    @property
    def removed_ids(self) -> Tuple[Hashable, ...]:
        return tuple(eid for eid, _ in self.removed)


def _endpoint_states(SD: StateDigraph, e: Edge) -> Tuple[int, int]:
    # a b-path from u^tau_u to v^tau_v ends in state (v, -tau_v)
    return SD.state(e.u, e.tau_u), SD.state(e.v, -e.tau_v)


def _implied(SD: StateDigraph, e: Edge, alive: np.ndarray) -> bool:
    src, dst = _endpoint_states(SD, e)
    return bool(SD.reach_from(src, alive)[dst])


def _check_ordering(G: BidirectedGraph, ordering) -> Tuple[Hashable, ...]:
    if ordering is None:
        return G.edge_ids
    ordering = tuple(ordering)
    if len(ordering) != len(G.edges) or set(ordering) != set(G.edge_ids):
        raise OrderingError("ordering must be a permutation of the edge ids")
    return ordering


def transitive_reduction(G: BidirectedGraph, ordering: Optional[Sequence] = None) -> ReductionResult:
    """``G - S_<(G)``: scan edges in order, dropping each one a b-path of the rest implies."""
    ordering = _check_ordering(G, ordering)
    SD = StateDigraph(G)
    alive = SD.alive_mask()
    removed = []
    for eid in ordering:
        j = G.edge_index(eid)
        alive[j] = False
        src, dst = _endpoint_states(SD, G.edges[j])
        arcs = SD.shortest_path(src, dst, alive)
        if arcs is None:
            alive[j] = True
        else:
            removed.append((eid, SD.path_to_bpath(arcs)))
    gone = {eid for eid, _ in removed}
    return ReductionResult(G.without(gone), tuple(removed), ordering)


def _generates(G: BidirectedGraph, H_ids) -> bool:
    return G.keys() <= closure_keys(G.partial(H_ids))


def is_transitive_reduction(G: BidirectedGraph, H) -> bool:
    """Does ``H`` generate ``G`` under closure while no single-edge deletion of it does?"""
    if isinstance(H, BidirectedGraph):
        if not H.is_partial_graph_of(G):
            raise NotPartialGraphError("H is not a partial graph of G")
        ids = set(H.edge_ids)
    else:
        ids = set(H)
        if not ids <= set(G.edge_ids):
            raise NotPartialGraphError("H is not a partial graph of G")
    if not _generates(G, ids):
        return False
    # closure is monotone, so single deletions decide minimality
    return not any(_generates(G, ids - {eid}) for eid in ids)


def _default_cap() -> Optional[int]:
    raw = os.environ.get("BIDIGRAPH_CAP")
    return int(raw) if raw else None


def all_reductions(G: BidirectedGraph, cap: Optional[int] = None, bound: int = EXHAUSTIVE_EDGE_BOUND) -> set:
    """Every transitive reduction of ``G``, as frozensets of edge ids.

    Explores sequential eliminations (each step drops one edge implied by
    the remaining ones), memoising visited edge sets; the dead ends are
    exactly the results of the elimination over all orderings.  ``cap``
    bounds the number of explored edge sets.
    """
    cap = cap if cap is not None else _default_cap()
    if cap is None and len(G.edges) > bound:
        raise CapExceededError(
            f"{len(G.edges)} edges exceeds the exhaustive bound {bound}; pass a cap", bound
        )
    SD = StateDigraph(G)
    m = len(G.edges)
    results = set()
    seen = set()
    stack = [tuple([True] * m)]
    while stack:
        mask = stack.pop()
        if mask in seen:
            continue
        seen.add(mask)
        if cap is not None and len(seen) > cap:
            raise CapExceededError(f"explored more than {cap} partial graphs", cap)
        alive = np.array(mask, dtype=np.bool_)
        children = []
        for j in range(m):
            if not mask[j]:
                continue
            alive[j] = False
            if _implied(SD, G.edges[j], alive):
                children.append(mask[:j] + (False,) + mask[j + 1:])
            alive[j] = True
        if children:
            stack.extend(c for c in children if c not in seen)
        else:
            results.add(frozenset(G.edges[j].id for j in range(m) if mask[j]))
    return results


def redundant_edges(G: BidirectedGraph) -> frozenset:
    """Edges implied by a b-path avoiding themselves.

    This is the removed set of the (then unique) reduction, so it is only
    defined when there is no b-circuit and no two edges share a key;
    parallel copies imply each other and any one of them may be kept.
    """
    if len(G.keys()) < len(G.edges):
        raise NonUniqueReductionError("parallel edges share a key; the reduction keeps an arbitrary copy")
    SD = StateDigraph(G)
    if has_bcircuit(SD):
        raise NonUniqueReductionError("reduction not unique; use transitive_reduction with an ordering")
    alive = SD.alive_mask()
    out = set()
    for j, e in enumerate(G.edges):
        alive[j] = False
        if _implied(SD, e, alive):
            out.add(e.id)
        alive[j] = True
    return frozenset(out)


@dataclass(frozen=True)
class SourceSinkProfile:
    sources: frozenset
    sinks: frozenset
    antibalanced: bool
    cross_edges_positive: bool
    inner_edges_negative: bool


def no_long_bpath_profile(G: BidirectedGraph) -> Optional[SourceSinkProfile]:
    """Source/sink structure of a graph with no positive loop and no b-path longer than one edge.

    Returns None when the hypotheses fail.  Such a graph is its own
    reduction (up to parallel copies), every vertex is a source or a sink, and the graph is
    antibalanced with positive source-sink edges and negative edges inside
    each side.
    """
    if any(e.is_loop and signature(e) > 0 for e in G.edges):
        return None
    SD = StateDigraph(G)
    indeg = np.bincount(SD.heads, minlength=SD.n_states)
    outdeg = np.bincount(SD.tails, minlength=SD.n_states)
    # without self-loop arcs, any state with an arc in and an arc out carries a 2-edge b-path
    if np.any((indeg > 0) & (outdeg > 0)):
        return None
    sources, sinks = sources_and_sinks(G)
    isolated = sources & sinks
    cross_ok = True
    inner_ok = True
    for e in G.edges:
        if e.u in isolated or e.v in isolated:
            continue
        same_side = (e.u in sources) == (e.v in sources)
        if same_side:
            inner_ok = inner_ok and signature(e) < 0
        else:
            cross_ok = cross_ok and signature(e) > 0
    return SourceSinkProfile(sources, sinks, is_antibalanced(G), cross_ok, inner_ok)
