"""Engine against brute-force oracle, one graph at a time."""
from __future__ import annotations

from typing import List

from .closure import closure_keys
from .matroid import enumerate_circuits, rank
from .oracle import (
    DEFAULT_CONFIG,
    OracleConfig,
    brute_bpath_table,
    brute_circuits,
    brute_closure,
    brute_rank,
    brute_reductions,
)
from .reduction import all_reductions
from .states import StateDigraph, enumerate_bpaths_from


def _bpath_set(paths) -> set:
    return {tuple(p.steps) for p in paths}


def compare_bpaths(G, config: OracleConfig = DEFAULT_CONFIG) -> List[str]:
    SD = StateDigraph(G)
    mine = {}
    for x in G.vertices:
        for a in (1, -1):
            for (y, b), paths in enumerate_bpaths_from(SD, x, a).items():
                mine[(x, a, y, b)] = _bpath_set(paths)
    ref = {k: _bpath_set(v) for k, v in brute_bpath_table(G, config).items()}
    out = []
    for k in sorted(set(mine) | set(ref), key=repr):
        if mine.get(k, set()) != ref.get(k, set()):
            x, a, y, b = k
            out.append(
                f"b-paths {x}{a:+d} -> {y}{b:+d}: engine {len(mine.get(k, ()))}, oracle {len(ref.get(k, ()))}"
            )
    return out


def compare(G, config: OracleConfig = DEFAULT_CONFIG, bpaths: bool = True) -> List[str]:
    """Descriptions of every disagreement (empty list when engine and oracle agree)."""
    config.check(G)
    out = []
    if bpaths:
        out.extend(compare_bpaths(G, config))
    mine = closure_keys(G)
    ref = brute_closure(G, config) | G.keys()
    if mine != ref:
        out.append(f"closure keys differ: {sorted(mine ^ ref)}")
    if all_reductions(G) != brute_reductions(G, config):
        out.append("reduction sets differ")
    mine_c = {(F, t) for F, t in enumerate_circuits(G)}
    ref_c = set(brute_circuits(G, config))
    if mine_c != ref_c:
        out.append(f"circuits differ: engine {len(mine_c)}, oracle {len(ref_c)}")
    if rank(G) != brute_rank(G):
        out.append(f"rank {rank(G)} vs {brute_rank(G)}")
    return out
