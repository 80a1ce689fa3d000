"""Frame matroid of the signed graph underlying a bidirected graph.

Circuits come in three shapes: a positive cycle (type i), two negative
cycles meeting in exactly one vertex (type ii), and two vertex-disjoint
negative cycles joined by an elementary chain internally disjoint from both
(type iii).  Everything here is enumeration at desk scale; caps are explicit
and breaching one raises :class:`CapExceededError`.
"""
from __future__ import annotations

import enum
import itertools
import os
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Optional, Tuple

from .errors import CapExceededError, GraphError
from .graph import BidirectedGraph, Sign, balanced_component_count, connected_components, signature

DEFAULT_CYCLE_CAP = 10_000
DEFAULT_CIRCUIT_CAP = 100_000


def _cap(value: Optional[int], default: int) -> int:
    if value is not None:
        return value
    raw = os.environ.get("BIDIGRAPH_CAP")
    return int(raw) if raw else default


class CircuitType(str, enum.Enum):
    I = "i"
    II = "ii"
    III = "iii"


class Cycle(NamedTuple):
    edges: frozenset
    vertices: frozenset
    sign: Sign


@dataclass(frozen=True)
class CircuitList:
    circuits: Tuple[Tuple[frozenset, CircuitType], ...]
    truncated: bool = False

    def __iter__(self):
        return iter(self.circuits)

    def __len__(self):
        return len(self.circuits)


@dataclass(frozen=True)
class MatroidReport:
    rank: int
    balanced_components: int
    circuits: CircuitList
    quasibalanced: bool
    connected: Optional[bool] = None


# --------------------------------------------------------------------------
# cycles


def _sign_of(G: BidirectedGraph, edge_ids: Iterable) -> Sign:
    p = 1
    for eid in edge_ids:
        p *= signature(G.edge(eid))
    return p


def _shape(G: BidirectedGraph, F) -> Tuple[Counter, dict]:
    """Degrees (loops count twice) and adjacency restricted to edge set ``F``."""
    deg = Counter()
    adj = defaultdict(list)
    for eid in F:
        e = G.edge(eid)
        deg[e.u] += 1
        deg[e.v] += 1
        adj[e.u].append((e.v, eid))
        if not e.is_loop:
            adj[e.v].append((e.u, eid))
    return deg, adj


def _is_connected(adj, vertices) -> bool:
    vertices = set(vertices)
    if not vertices:
        return True
    start = next(iter(vertices))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y, _ in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == vertices


def _is_elementary_cycle(G: BidirectedGraph, F) -> bool:
    F = set(F)
    if not F:
        return False
    deg, adj = _shape(G, F)
    return all(d == 2 for d in deg.values()) and len(F) == len(deg) and _is_connected(adj, deg)


def cycle_sign(G: BidirectedGraph, C: Iterable) -> Sign:
    """Product of the edge signs around an elementary cycle given by its edge ids."""
    C = list(C)
    if len(set(C)) != len(C) or not _is_elementary_cycle(G, C):
        raise GraphError(f"{C!r} is not an elementary cycle")
    return _sign_of(G, C)


def elementary_cycles(G: BidirectedGraph, cap: Optional[int] = None) -> List[Cycle]:
    """All elementary cycles of the underlying multigraph (loops and digons included).

    Each cycle is rooted at its lowest-index vertex and found by depth-first
    search over higher-index vertices; both traversal directions are merged.
    """
    cap = _cap(cap, DEFAULT_CYCLE_CAP)
    order = {v: i for i, v in enumerate(G.vertices)}
    adj = defaultdict(list)
    found = {}

    def record(edges, verts):
        key = frozenset(edges)
        if key not in found:
            found[key] = Cycle(key, frozenset(verts), _sign_of(G, key))
            if len(found) > cap:
                raise CapExceededError(f"more than {cap} elementary cycles", cap)

    for e in G.edges:
        if e.is_loop:
            record([e.id], [e.u])
        else:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))

    for root in G.vertices:
        r = order[root]
        path_v = [root]
        path_e = []
        on_path = {root}

        def dfs(x):
            for y, eid in adj[x]:
                if eid in path_e:
                    continue
                if y == root and path_e:
                    record(path_e + [eid], path_v)
                elif order[y] > r and y not in on_path:
                    on_path.add(y)
                    path_v.append(y)
                    path_e.append(eid)
                    dfs(y)
                    path_e.pop()
                    path_v.pop()
                    on_path.discard(y)

        dfs(root)
    eorder = {eid: i for i, eid in enumerate(G.edge_ids)}
    return sorted(found.values(), key=lambda c: (len(c.edges), sorted(eorder[e] for e in c.edges)))


# --------------------------------------------------------------------------
# circuit classification


def _bridges(adj, vertices) -> set:
    """Bridge edge ids of a small multigraph (Tarjan low-link, parallel edges respected)."""
    disc = {}
    low = {}
    out = set()
    counter = itertools.count()

    def visit(x, via):
        disc[x] = low[x] = next(counter)
        for y, eid in adj[x]:
            if eid == via:
                continue
            if y not in disc:
                visit(y, eid)
                low[x] = min(low[x], low[y])
                if low[y] > disc[x]:
                    out.add(eid)
            else:
                low[x] = min(low[x], disc[y])

    for v in vertices:
        if v not in disc:
            visit(v, None)
    return out


def classify_circuit(G: BidirectedGraph, F: Iterable) -> Optional[CircuitType]:
    """The circuit type of edge set ``F``, or None when ``F`` is not a frame-matroid circuit."""
    F = frozenset(F)
    if not F:
        return None
    for eid in F:
        G.edge(eid)
    deg, adj = _shape(G, F)
    if not _is_connected(adj, deg) or any(d < 2 for d in deg.values()):
        return None
    nullity = len(F) - len(deg) + 1
    if nullity == 1:
        # connected, min degree 2, one independent cycle: an elementary cycle
        return CircuitType.I if _sign_of(G, F) > 0 else None
    if nullity != 2:
        return None
    bridges = _bridges(adj, deg)
    if not bridges:
        big = [v for v, d in deg.items() if d == 4]
        if len(big) != 1 or any(d not in (2, 4) for d in deg.values()):
            return None  # theta graphs always contain a positive cycle
        halves = _split_at(G, F, big[0])
        if halves is None:
            return None
        a, b = halves
        if _sign_of(G, a) < 0 and _sign_of(G, b) < 0:
            return CircuitType.II
        return None
    rest = F - bridges
    parts = _components(G, rest)
    if len(parts) != 2 or not all(_is_elementary_cycle(G, p) for p in parts):
        return None
    chain_deg, chain_adj = _shape(G, bridges)
    ends = [v for v, d in chain_deg.items() if d == 1]
    if len(ends) != 2 or any(d > 2 for d in chain_deg.values()) or not _is_connected(chain_adj, chain_deg):
        return None
    cyc_verts = [set(_shape(G, p)[0]) for p in parts]
    inner = set(chain_deg) - set(ends)
    if inner & (cyc_verts[0] | cyc_verts[1]):
        return None
    a, b = cyc_verts
    if not ((ends[0] in a and ends[1] in b) or (ends[0] in b and ends[1] in a)):
        return None
    if all(_sign_of(G, p) < 0 for p in parts):
        return CircuitType.III
    return None


def _components(G: BidirectedGraph, F) -> List[frozenset]:
    _, adj = _shape(G, F)
    seen = set()
    out = []
    for eid in F:
        if eid in seen:
            continue
        comp = set()
        e = G.edge(eid)
        stack = [e.u]
        visited_v = {e.u}
        while stack:
            x = stack.pop()
            for y, fid in adj[x]:
                comp.add(fid)
                if y not in visited_v:
                    visited_v.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


def _split_at(G: BidirectedGraph, F, v):
    """Split a figure-eight edge set into its two cycles through ``v``."""
    loops_at_v = [eid for eid in F if G.edge(eid).is_loop and G.edge(eid).u == v]
    if loops_at_v:
        first = frozenset([loops_at_v[0]])
    else:
        _, adj = _shape(G, F)
        start_y, start_e = adj[v][0]
        used = [start_e]
        x = start_y
        while x != v:
            nxt = [(y, eid) for y, eid in adj[x] if eid not in used]
            if not nxt:
                return None
            y, eid = nxt[0]
            used.append(eid)
            x = y
        first = frozenset(used)
    second = F - first
    if not _is_elementary_cycle(G, first) or not _is_elementary_cycle(G, second):
        return None
    return first, second


# --------------------------------------------------------------------------
# enumeration


def _chains_between(G: BidirectedGraph, A: frozenset, B: frozenset) -> List[frozenset]:
    """Elementary chains from a vertex of A to a vertex of B with interior outside A and B."""
    adj = defaultdict(list)
    for e in G.edges:
        if not e.is_loop:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
    out = []
    for a in G.vertices:
        if a not in A:
            continue
        path_e = []
        on_path = {a}

        def dfs(x):
            for y, eid in adj[x]:
                if eid in path_e or y in on_path:
                    continue
                if y in B:
                    out.append(frozenset(path_e + [eid]))
                elif y not in A:
                    on_path.add(y)
                    path_e.append(eid)
                    dfs(y)
                    path_e.pop()
                    on_path.discard(y)

        dfs(a)
    return out


def _iter_circuits(G: BidirectedGraph, cycles: List[Cycle]):
    seen = set()
    for c in cycles:
        if c.sign > 0:
            seen.add(c.edges)
            yield c.edges, CircuitType.I
    negative = [c for c in cycles if c.sign < 0]
    for c1, c2 in itertools.combinations(negative, 2):
        if len(c1.vertices & c2.vertices) == 1:
            F = c1.edges | c2.edges
            if F not in seen:
                seen.add(F)
                yield F, CircuitType.II
    for c1, c2 in itertools.combinations(negative, 2):
        if c1.vertices & c2.vertices:
            continue
        for chain in _chains_between(G, c1.vertices, c2.vertices):
            F = c1.edges | c2.edges | chain
            if F not in seen:
                seen.add(F)
                yield F, CircuitType.III


def enumerate_circuits(G: BidirectedGraph, cap: Optional[int] = None, cycle_cap: Optional[int] = None) -> CircuitList:
    """All frame-matroid circuits, type i first, then ii, then iii.

    Positive elementary cycles give type i; pairs of negative cycles sharing
    one vertex give type ii; vertex-disjoint pairs joined by an admissible
    chain give type iii.  More than ``cap`` circuits yields the first ``cap``
    with ``truncated`` set.
    """
    cap = _cap(cap, DEFAULT_CIRCUIT_CAP)
    found = list(itertools.islice(_iter_circuits(G, elementary_cycles(G, cycle_cap)), cap + 1))
    if len(found) > cap:
        return CircuitList(tuple(found[:cap]), truncated=True)
    return CircuitList(tuple(found))


# --------------------------------------------------------------------------
# rank, quasibalance, connectivity


def rank(G: BidirectedGraph) -> int:
    return len(G.vertices) - balanced_component_count(G)


def quasibalance_witnesses(G: BidirectedGraph, cycle_cap: Optional[int] = None) -> List[Tuple[frozenset, CircuitType]]:
    """Every type ii and type iii circuit (possibly empty)."""
    return [(F, t) for F, t in enumerate_circuits(G, cap=None, cycle_cap=cycle_cap) if t is not CircuitType.I]


def quasibalance_witness(G: BidirectedGraph, cycle_cap: Optional[int] = None) -> Optional[Tuple[frozenset, CircuitType]]:
    """A largest type ii/iii circuit (ties by edge order), or None if quasibalanced."""
    ws = quasibalance_witnesses(G, cycle_cap)
    if not ws:
        return None
    eorder = {eid: i for i, eid in enumerate(G.edge_ids)}
    return min(ws, key=lambda w: (-len(w[0]), sorted(eorder[e] for e in w[0])))


def is_quasibalanced(G: BidirectedGraph, cycle_cap: Optional[int] = None) -> bool:
    """No two negative cycles in one component share fewer than two vertices."""
    negative = [c for c in elementary_cycles(G, cycle_cap) if c.sign < 0]
    comp_of = {}
    for i, comp in enumerate(connected_components(G)):
        for v in comp:
            comp_of[v] = i
    for c1, c2 in itertools.combinations(negative, 2):
        if comp_of[next(iter(c1.vertices))] != comp_of[next(iter(c2.vertices))]:
            continue
        if len(c1.vertices & c2.vertices) < 2:
            return False
    return True


def is_matroid_connected(G: BidirectedGraph, cap: Optional[int] = None) -> bool:
    """Every pair of distinct edges lies in a common circuit."""
    circuits = enumerate_circuits(G, cap)
    if circuits.truncated:
        raise CapExceededError("circuit enumeration truncated", cap)
    covered = set()
    for F, _ in circuits:
        covered.update(itertools.combinations(sorted(F, key=G.edge_index), 2))
    ids = G.edge_ids
    return all((a, b) in covered for a, b in itertools.combinations(ids, 2))


def matroid_report(G: BidirectedGraph, cap: Optional[int] = None, with_connectivity: bool = False) -> MatroidReport:
    circuits = enumerate_circuits(G, cap)
    connected = is_matroid_connected(G, cap) if with_connectivity else None
    return MatroidReport(
        rank=rank(G),
        balanced_components=balanced_component_count(G),
        circuits=circuits,
        quasibalanced=is_quasibalanced(G),
        connected=connected,
    )
