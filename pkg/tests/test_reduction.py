from __future__ import annotations

import random

import pytest
from hypothesis import given, settings

from bidigraph import (
    BidirectedGraph,
    all_reductions,
    closure_keys,
    has_bcircuit,
    is_all_positive,
    is_balanced,
    is_transitive_reduction,
    no_long_bpath_profile,
    redundant_edges,
    relative_closure,
    transitive_closure,
    transitive_reduction,
)
from bidigraph.errors import CapExceededError, NonUniqueReductionError, OrderingError
from bidigraph.graph import connected_components, edge_key
from bidigraph.oracle import digraph_reduction_keys, random_positive_dag

from conftest import graphs, single_edge


def test_triangle_reduction(tri_graph):
    res = transitive_reduction(tri_graph)
    assert res.removed_ids == ("e3",)
    assert res.removed[0][1].format(with_edges=False) == "2- 1 3-"
    assert res.graph.edge_ids == ("e1", "e2")


def test_circuit_reduction_is_triangle(circ_graph):
    res = transitive_reduction(circ_graph)
    assert res.removed_ids == ("g",)
    assert set(res.graph.edge_ids) == {"f1", "f2", "f3"}


def test_quasi_reduction_drops_only_e(quasi_graph):
    res = transitive_reduction(quasi_graph)
    assert res.removed_ids == ("e",)
    assert res.removed[0][1].format() == "1- 5 6 7 2+ via e5,e6,e7,e9"


def test_is_transitive_reduction(tri_graph, path_graph):
    assert is_transitive_reduction(tri_graph, ["e1", "e2"])
    assert not is_transitive_reduction(tri_graph, tri_graph)
    assert is_transitive_reduction(path_graph, path_graph)


def test_all_reductions_examples(tri_graph, circ_graph):
    assert all_reductions(tri_graph) == {frozenset({"e1", "e2"})}
    assert all_reductions(single_edge()) == {frozenset({"e1"})}
    F = transitive_closure(circ_graph).graph
    found = {frozenset(F.edge(e).key for e in ids) for ids in all_reductions(F)}
    c1 = frozenset(circ_graph.edge(e).key for e in ("f1", "f2", "f3"))
    c2 = frozenset({edge_key("2", -1, "3", -1), edge_key("1", -1, "3", 1), edge_key("2", 1, "1", 1)})
    assert {c1, c2} <= found


def test_all_reductions_needs_cap_for_large_graphs():
    G = BidirectedGraph(range(4), [(f"e{i}", i % 4, 1, (i + 1) % 4, -1) for i in range(14)])
    with pytest.raises(CapExceededError):
        all_reductions(G)


def test_redundant_edges(tri_graph, path_graph, quasi_graph, circ_graph):
    assert redundant_edges(tri_graph) == {"e3"}
    assert redundant_edges(path_graph) == frozenset()
    assert redundant_edges(quasi_graph) == {"e"}
    with pytest.raises(NonUniqueReductionError):
        redundant_edges(circ_graph)


def test_redundant_edges_refuses_parallel_copies():
    G = BidirectedGraph(["x", "y"], [("a", "x", 1, "y", -1), ("b", "x", 1, "y", -1)])
    with pytest.raises(NonUniqueReductionError):
        redundant_edges(G)
    assert all_reductions(G) == {frozenset({"a"}), frozenset({"b"})}


def test_bad_ordering(tri_graph):
    with pytest.raises(OrderingError):
        transitive_reduction(tri_graph, ["e1", "e2"])
    with pytest.raises(OrderingError):
        transitive_reduction(tri_graph, ["e1", "e2", "e2"])


def test_ordering_matters_with_bcircuits(circ_graph):
    F = transitive_closure(circ_graph).graph
    outs = {frozenset(transitive_reduction(F, order).graph.edge_ids) for order in (F.edge_ids, F.edge_ids[::-1])}
    assert len(outs) == 2


def test_profile_examples(path_graph):
    p = no_long_bpath_profile(single_edge())
    assert (p.sources, p.sinks, p.antibalanced, p.cross_edges_positive) == ({"x"}, {"y"}, True, True)
    G = BidirectedGraph(["x", "y", "z"], [("a", "x", 1, "y", 1), ("b", "x", 1, "z", 1)])
    p = no_long_bpath_profile(G)
    assert p.sources == {"x", "y", "z"} and p.sinks == frozenset()
    assert p.antibalanced and p.inner_edges_negative
    assert no_long_bpath_profile(path_graph) is None


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_reduction_generates_and_preserves(G):
    R = transitive_reduction(G).graph
    assert relative_closure(G, R) == G
    assert closure_keys(R) == closure_keys(G)
    assert is_transitive_reduction(G, R)
    assert sorted(map(sorted, connected_components(R))) == sorted(map(sorted, connected_components(G)))
    assert is_balanced(R) == is_balanced(G)
    assert is_all_positive(R) == is_all_positive(G)


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_reduction_of_g_reduces_closure(G):
    R = transitive_reduction(G).graph
    F = transitive_closure(G).graph
    assert closure_keys(F) >= R.keys()
    assert F.keys() <= closure_keys(R)
    # R is minimal, so it is also a transitive reduction of the closure
    assert not any(F.keys() <= closure_keys(R.without([e])) for e in R.edge_ids)


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_unique_regime(G):
    if has_bcircuit(G):
        return
    R = transitive_reduction(G).graph
    reductions = all_reductions(G)
    if len(G.keys()) < len(G.edges):
        # parallel copies are interchangeable; the key set is still unique
        assert len({frozenset(G.edge(e).key for e in ids) for ids in reductions}) == 1
        with pytest.raises(NonUniqueReductionError):
            redundant_edges(G)
    else:
        assert reductions == {frozenset(G.edge_ids) - redundant_edges(G)}
    F = transitive_closure(G).graph
    RF = transitive_reduction(F).graph
    assert RF.keys() == R.keys()
    assert closure_keys(RF) == closure_keys(G)
    if not transitive_reduction(G).removed:
        assert RF.keys() == G.keys()


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_long_bpath_free_profile(G):
    p = no_long_bpath_profile(G)
    if p is None:
        return
    # only parallel copies can go
    assert transitive_reduction(G).graph.keys() == G.keys()
    assert p.sources | p.sinks == set(G.vertices)
    assert p.antibalanced and p.cross_edges_positive and p.inner_edges_negative


def test_positive_dag_matches_digraph_reduction():
    rng = random.Random(11)
    for _ in range(40):
        G = random_positive_dag(rng)
        assert transitive_reduction(G).graph.keys() == digraph_reduction_keys(G)
