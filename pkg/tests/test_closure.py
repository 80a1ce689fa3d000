from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings

from bidigraph import (
    BidirectedGraph,
    closure_keys,
    is_all_positive,
    is_balanced,
    is_transitive,
    relative_closure,
    switch,
    switch_key,
    transitive_closure,
)
from bidigraph.errors import NotPartialGraphError
from bidigraph.graph import edge_key, edge_weight, signature
from bidigraph.oracle import digraph_closure_keys, random_positive_dag
from bidigraph.states import bwalk_sign, bwalk_weight, is_bpath

from conftest import graphs


def test_path_closure_adds_three(path_graph):
    res = transitive_closure(path_graph)
    assert res.added == {
        edge_key("x", -1, "b", 1),
        edge_key("a", 1, "y", -1),
        edge_key("x", -1, "y", -1),
    }
    assert len(res.graph.edges) == 6
    assert res.graph.edge_ids[:3] == path_graph.edge_ids


def test_triangle_closure_adds_nothing(tri_graph):
    res = transitive_closure(tri_graph)
    assert res.added == frozenset()
    assert res.graph == tri_graph


def test_circuit_closure_has_reversed_triangle_and_loops(circ_graph):
    keys = transitive_closure(circ_graph).keys
    for key in (edge_key("2", -1, "3", -1), edge_key("1", -1, "3", 1), edge_key("2", 1, "1", 1)):
        assert key in keys
    for v in circ_graph.vertices:
        assert edge_key(v, 1, v, -1) in keys


def test_is_transitive(path_graph, tri_graph):
    assert is_transitive(tri_graph)
    assert not is_transitive(path_graph)
    assert is_transitive(BidirectedGraph(["x", "y"], []))


def test_relative_closure(tri_graph, quasi_graph):
    assert relative_closure(tri_graph, tri_graph) == tri_graph
    assert relative_closure(tri_graph, ["e1", "e2"]) == tri_graph
    rest = [eid for eid in quasi_graph.edge_ids if eid != "e"]
    assert relative_closure(quasi_graph, rest) == quasi_graph


def test_relative_closure_rejects_foreign_edges(tri_graph):
    with pytest.raises(NotPartialGraphError):
        relative_closure(tri_graph, ["nope"])


def test_closure_ids_are_list_safe(circ_graph):
    for eid in transitive_closure(circ_graph).added_ids:
        assert "," not in eid and " " not in eid


def test_parallel_edges_kept_and_keys_not_duplicated():
    G = BidirectedGraph(["x", "y", "z"], [("a", "x", -1, "y", 1), ("b", "x", -1, "y", 1), ("c", "y", -1, "z", 1)])
    res = transitive_closure(G)
    assert [e.id for e in res.graph.edges][:3] == ["a", "b", "c"]
    assert res.added == {edge_key("x", -1, "z", 1)}


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_closure_axioms(G):
    F = closure_keys(G)
    assert G.keys() <= F
    assert closure_keys(transitive_closure(G).graph) == F
    ids = G.edge_ids
    for j in range(len(ids)):
        assert closure_keys(G.without([ids[j]])) <= F


@settings(max_examples=80, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_witness_conservation(G):
    res = transitive_closure(G)
    for eid in res.added_ids:
        e = res.graph.edge(eid)
        w = res.witness[e.key]
        assert is_bpath(G, w)
        (x, a), (y, b) = w.start, w.end
        assert edge_key(x, a, y, b) == e.key
        assert bwalk_weight(w) == w.edge_weight_sum() == edge_weight(e) == a + b
        assert bwalk_sign(w) == w.edge_signs_product() == signature(e) == -a * b


@settings(max_examples=40, deadline=None)
@given(graphs(max_vertices=5, max_edges=7))
def test_switching_commutes_with_closure(G):
    F = closure_keys(G)
    for r in range(len(G.vertices) + 1):
        for X in itertools.combinations(G.vertices, r):
            assert closure_keys(switch(G, X)) == {switch_key(k, X) for k in F}


@settings(max_examples=60, deadline=None)
@given(graphs(max_vertices=7, max_edges=10))
def test_closure_preserves_positivity_and_balance(G):
    H = transitive_closure(G).graph
    if is_all_positive(G):
        assert is_all_positive(H)
    if is_balanced(G):
        assert is_balanced(H)


def test_positive_dag_matches_digraph_closure():
    rng = random.Random(5)
    for _ in range(40):
        G = random_positive_dag(rng)
        mine = {k for k in closure_keys(G) if k[0][1] != k[1][1]}
        assert mine == digraph_closure_keys(G)
