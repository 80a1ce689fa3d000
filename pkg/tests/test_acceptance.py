"""Acceptance gate: ten exact criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from functools import lru_cache

import pytest

from bidigraph import (
    CircuitType,
    CyclicKind,
    StateDigraph,
    all_reductions,
    classify_cyclic_bpath,
    closure_keys,
    enumerate_bpaths,
    has_bcircuit,
    is_quasibalanced,
    load_example,
    quasibalance_witness,
    rank,
    redundant_edges,
    switch,
    switch_key,
    transitive_closure,
    transitive_reduction,
)
from bidigraph.crosscheck import compare
from bidigraph.graph import edge_key, edge_weight, signature
from bidigraph.oracle import (
    digraph_closure_keys,
    digraph_reduction_keys,
    exhaustive_family,
    random_positive_dag,
    random_suite,
)

SUITE_SEED = 2024
SUITE_SIZE = 500
SWITCH_SEED = 7
SWITCH_SIZE = 200
DAG_SEED = 99
DAG_COUNT = 100

pytestmark = pytest.mark.acceptance


@lru_cache(maxsize=None)
def suite():
    return tuple(random_suite(SUITE_SEED, SUITE_SIZE))


def _report(number, title, violations, detail="", capsys=None):
    status = "PASS" if not violations else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title}: {len(violations)} violations"
    if detail:
        line += f" ({detail})"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    for v in violations[:5]:
        print(f"    {v}")
    return violations


# --------------------------------------------------------------------------


def crit_1():
    G = load_example("path")
    res = transitive_closure(G)
    want = {edge_key("x", -1, "b", 1), edge_key("a", 1, "y", -1), edge_key("x", -1, "y", -1)}
    out = []
    if res.added != want:
        out.append(f"added {sorted(res.added)}")
    if len(res.graph.edges) != 6:
        out.append(f"{len(res.graph.edges)} edges")
    return out, "closure of the 4-vertex path"


def crit_2():
    out = []
    tri = load_example("triangle")
    r = transitive_reduction(tri)
    if r.removed_ids != ("e3",) or r.removed[0][1].format(with_edges=False) != "2- 1 3-":
        out.append(f"triangle removed {[(e, p.format()) for e, p in r.removed]}")
    circ = load_example("circuit")
    c1 = frozenset(circ.edge(e).key for e in ("f1", "f2", "f3"))
    c2 = frozenset({edge_key("2", -1, "3", -1), edge_key("1", -1, "3", 1), edge_key("2", 1, "1", 1)})
    if transitive_reduction(circ).graph.keys() != c1:
        out.append("circuit graph does not reduce to C1")
    F = transitive_closure(circ).graph
    found = {frozenset(F.edge(e).key for e in ids) for ids in all_reductions(F)}
    if not {c1, c2} <= found:
        out.append("closure of circuit graph lacks C1 or C2 among its reductions")
    return out, f"closure of circuit graph has {len(found)} reductions"


def crit_3():
    out = []
    G = load_example("quasi")
    r = transitive_reduction(G)
    if r.removed_ids != ("e",):
        out.append(f"removed {r.removed_ids}")
    if is_quasibalanced(G):
        out.append("G reported quasibalanced")
    w = quasibalance_witness(G)
    target = frozenset(G.edge_ids) - {"e9"}  # e9 = {7-, 2+}
    if w is None or w != (target, CircuitType.II):
        out.append(f"witness {w}")
    if not is_quasibalanced(G.without(["e"])):
        out.append("G - e not quasibalanced")
    e = G.edge("e")
    for p in enumerate_bpaths(StateDigraph(G), e.u, e.tau_u, e.v, e.tau_v):
        if classify_cyclic_bpath(G, p) is not CyclicKind.NOT_CYCLIC:
            out.append(f"cyclic b-path implies e: {p}")
    return out, "7-vertex counterexample"


def crit_4():
    out = []
    for i, G in enumerate(suite()):
        F = closure_keys(G)
        if not G.keys() <= F:
            out.append(f"graph {i}: not extensive")
        if closure_keys(transitive_closure(G).graph) != F:
            out.append(f"graph {i}: not idempotent")
        ids = G.edge_ids
        # monotone on every single-edge deletion and on a few random sub-graphs
        subs = [[e] for e in ids]
        rng = random.Random(i)
        subs += [rng.sample(ids, rng.randint(0, len(ids))) for _ in range(3)]
        for drop in subs:
            if not closure_keys(G.without(drop)) <= F:
                out.append(f"graph {i}: not monotone dropping {drop}")
    return out, f"{SUITE_SIZE} random graphs"


def crit_5():
    out = []
    checked = 0
    for i, G in enumerate(suite()):
        res = transitive_closure(G)
        for eid in res.added_ids:
            e = res.graph.edge(eid)
            w = res.witness[e.key]
            (_, a), (_, b) = w.start, w.end
            checked += 1
            if not (w.edge_weight_sum() == edge_weight(e) == a + b):
                out.append(f"graph {i} edge {eid}: weight")
            if not (w.edge_signs_product() == signature(e) == -a * b):
                out.append(f"graph {i} edge {eid}: sign")
    return out, f"{checked} added edges"


def crit_6():
    out = []
    graphs = random_suite(SWITCH_SEED, SWITCH_SIZE, max_vertices=5, max_edges=10)
    subsets = 0
    for i, G in enumerate(graphs):
        F = closure_keys(G)
        for r in range(len(G.vertices) + 1):
            for X in itertools.combinations(G.vertices, r):
                subsets += 1
                if closure_keys(switch(G, X)) != {switch_key(k, X) for k in F}:
                    out.append(f"graph {i}, X={X}")
    return out, f"{SWITCH_SIZE} graphs, {subsets} switching sets"


def crit_7():
    out = []
    for i, G in enumerate(suite()):
        F = transitive_closure(G).graph
        R = transitive_reduction(G).graph
        if closure_keys(R) != closure_keys(G):
            out.append(f"graph {i}: Ft(Rt(G)) != Ft(G)")
        if not (rank(F) == rank(G) == rank(R)):
            out.append(f"graph {i}: ranks {rank(F)}, {rank(G)}, {rank(R)}")
    return out, f"{SUITE_SIZE} random graphs"


def crit_8():
    out = []
    simple = multi = 0
    for i, G in enumerate(suite()):
        if has_bcircuit(G):
            continue
        reductions = all_reductions(G)
        RF = transitive_reduction(transitive_closure(G).graph).graph
        if RF.keys() != transitive_reduction(G).graph.keys():
            out.append(f"graph {i}: Rt(Ft(G)) != Rt(G)")
        if len(G.keys()) == len(G.edges):
            simple += 1
            if reductions != {frozenset(G.edge_ids) - redundant_edges(G)}:
                out.append(f"graph {i}: {len(reductions)} reductions")
        else:
            # parallel copies of one key are interchangeable; uniqueness holds on keys
            multi += 1
            if len({frozenset(G.edge(e).key for e in ids) for ids in reductions}) != 1:
                out.append(f"graph {i}: reductions differ on keys")
    return out, f"{simple} b-circuit-free graphs, plus {multi} with parallel edges compared on keys"


def crit_9():
    out = []
    family = list(exhaustive_family(3, 4))
    for i, G in enumerate(family):
        for d in compare(G):
            out.append(f"family graph {i}: {d}")
    for i, G in enumerate(suite()):
        for d in compare(G):
            out.append(f"random graph {i}: {d}")
    return out, f"{len(family)} family graphs + {SUITE_SIZE} random"


def crit_10():
    out = []
    rng = random.Random(DAG_SEED)
    for i in range(DAG_COUNT):
        G = random_positive_dag(rng)
        mine = {k for k in closure_keys(G) if k[0][1] != k[1][1]}
        if mine != digraph_closure_keys(G):
            out.append(f"dag {i}: closure")
        red = {k for k in transitive_reduction(G).graph.keys() if k[0][1] != k[1][1]}
        if red != digraph_reduction_keys(G):
            out.append(f"dag {i}: reduction")
    return out, f"{DAG_COUNT} positive DAGs"


CRITERIA = [
    (1, "closure of the path figure", crit_1),
    (2, "reduction figures", crit_2),
    (3, "quasibalance counterexample", crit_3),
    (4, "closure operator axioms", crit_4),
    (5, "weight and sign conservation", crit_5),
    (6, "switching commutes with closure", crit_6),
    (7, "closure of reduction and rank", crit_7),
    (8, "uniqueness without b-circuits", crit_8),
    (9, "engine agrees with brute-force oracle", crit_9),
    (10, "digraph specialization", crit_10),
]


@pytest.mark.parametrize("number, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    violations, detail = fn()
    _report(number, title, violations, detail, capsys)
    assert violations == []


def main() -> int:
    failed = 0
    start = time.perf_counter()
    for number, title, fn in CRITERIA:
        violations, detail = fn()
        failed += bool(_report(number, title, violations, detail))
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed in {time.perf_counter() - start:.1f}s")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
