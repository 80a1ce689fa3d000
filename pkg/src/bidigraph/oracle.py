"""Brute-force reference implementations for small instances.

Nothing here touches the state digraph or the reachability kernels: b-paths
are enumerated as raw chains over the edge list and filtered by the
definition, reductions are found by scanning every partial graph, and
matroid circuits are the minimal dependent sets of an independence test
built on a parity union-find.  Exponential by design; every entry point
checks the :class:`OracleConfig` guards first.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .errors import CapExceededError
from .graph import BidirectedGraph, Edge, edge_key, signature
from .states import BPath, Step


class GuardError(CapExceededError):
    """Instance larger than the oracle is allowed to handle."""


@dataclass(frozen=True)
class OracleConfig:
    max_chain_length: Optional[int] = None  # None means 2|V|
    max_vertices: int = 8
    max_edges: int = 12

    def chain_bound(self, G: BidirectedGraph) -> int:
        return self.max_chain_length if self.max_chain_length is not None else 2 * len(G.vertices)

    def check(self, G: BidirectedGraph) -> None:
        if len(G.vertices) > self.max_vertices or len(G.edges) > self.max_edges:
            raise GuardError(
                f"oracle guard: {len(G.vertices)} vertices / {len(G.edges)} edges exceeds "
                f"{self.max_vertices} / {self.max_edges}"
            )


DEFAULT_CONFIG = OracleConfig()


# --------------------------------------------------------------------------
# b-paths as raw chains


def _orientations(e: Edge, at) -> List[Step]:
    out = []
    if e.u == at:
        out.append(Step(e.id, e.u, e.tau_u, e.v, e.tau_v))
    if e.v == at and (e.u != e.v or e.tau_u != e.tau_v):
        out.append(Step(e.id, e.v, e.tau_v, e.u, e.tau_u))
    return out


def _chains_from(G: BidirectedGraph, x, alpha, bound: int, edges: Sequence[Edge] = None) -> Iterator[Tuple[Step, ...]]:
    """Chains from ``x^alpha`` with cancelling interior signs and no repeated signed vertex.

    Yields each chain that could be a b-path to *some* end; the caller
    filters by the end it wants.  A signed vertex ``x_i^{alpha_i}`` may only
    repeat as first == last, which is checked on the final position.
    """
    edges = G.edges if edges is None else edges
    out_steps: Dict[Tuple, List[Step]] = {}
    for e in edges:
        for at in {e.u, e.v}:
            for st in _orientations(e, at):
                out_steps.setdefault((st.tail, st.tail_sign), []).append(st)
    steps: List[Step] = []
    used_states = {(x, alpha)}

    def extend(cur, need):
        if len(steps) >= bound:
            return
        for st in out_steps.get((cur, need), ()):
            steps.append(st)
            final_state = (st.head, -st.head_sign)
            if final_state not in used_states or final_state == (x, alpha):
                yield tuple(steps)
            if final_state not in used_states:
                used_states.add(final_state)
                yield from extend(st.head, -st.head_sign)
                used_states.discard(final_state)
            steps.pop()

    yield from extend(x, alpha)


def _is_literal_bpath(chain: Sequence[Step]) -> bool:
    """Conditions (a) and (b) checked directly on the signed chain."""
    if not chain:
        return False
    for a, b in zip(chain, chain[1:]):
        if a.head != b.tail or a.head_sign + b.tail_sign != 0:
            return False
    states = [(s.tail, s.tail_sign) for s in chain] + [(chain[-1].head, -chain[-1].head_sign)]
    k = len(states) - 1
    for i, j in itertools.combinations(range(k + 1), 2):
        if states[i] == states[j] and (i, j) != (0, k):
            return False
    return True


def brute_bpaths(G: BidirectedGraph, x, alpha, y, beta, config: OracleConfig = DEFAULT_CONFIG) -> List[BPath]:
    config.check(G)
    G.check_vertex(x)
    G.check_vertex(y)
    out = []
    for chain in _chains_from(G, x, alpha, config.chain_bound(G)):
        last = chain[-1]
        if last.head == y and last.head_sign == beta and _is_literal_bpath(chain):
            out.append(BPath(chain))
    return out


def brute_bpath_table(G: BidirectedGraph, config: OracleConfig = DEFAULT_CONFIG) -> Dict[Tuple, List[BPath]]:
    """Every b-path of ``G``, keyed by ``(x, alpha, y, beta)``; one chain enumeration per start."""
    config.check(G)
    bound = config.chain_bound(G)
    table: Dict[Tuple, List[BPath]] = {}
    for x in G.vertices:
        for alpha in (1, -1):
            for chain in _chains_from(G, x, alpha, bound):
                if _is_literal_bpath(chain):
                    last = chain[-1]
                    table.setdefault((x, alpha, last.head, last.head_sign), []).append(BPath(chain))
    return table


def is_minimal_bwalk(G: BidirectedGraph, chain: Sequence[Step], oriented: bool = True) -> bool:
    """Minimality read literally: no proper subsequence of the edges is a b-walk with the same ends.

    With ``oriented`` the subsequence keeps every edge in the direction the
    chain traverses it, which is the reading under which minimal b-walks
    are exactly the chains without a repeated signed vertex.  Without it an
    edge may be re-used backwards, and some of those chains stop being
    minimal.  Exponential in the chain length.
    """
    chain = tuple(chain)
    if not chain:
        return False
    x, alpha = chain[0].tail, chain[0].tail_sign
    y, beta = chain[-1].head, chain[-1].head_sign
    k = len(chain)
    for r in range(1, k):
        for idx in itertools.combinations(range(k), r):
            if oriented:
                found = _oriented_walk([chain[i] for i in idx], x, alpha, y, beta)
            else:
                found = _subsequence_walk(G, [chain[i].edge for i in idx], x, alpha, y, beta)
            if found:
                return False
    return True


def _oriented_walk(steps: Sequence[Step], x, alpha, y, beta) -> bool:
    if (steps[0].tail, steps[0].tail_sign) != (x, alpha):
        return False
    if (steps[-1].head, steps[-1].head_sign) != (y, beta):
        return False
    return all(a.head == b.tail and a.head_sign + b.tail_sign == 0 for a, b in zip(steps, steps[1:]))


def _subsequence_walk(G, edge_ids, x, alpha, y, beta) -> bool:
    def go(i, cur, need):
        if i == len(edge_ids):
            return False
        for st in _orientations(G.edge(edge_ids[i]), cur):
            if st.tail_sign != need:
                continue
            if i == len(edge_ids) - 1:
                if st.head == y and st.head_sign == beta:
                    return True
            elif go(i + 1, st.head, -st.head_sign):
                return True
        return False

    return go(0, x, alpha)


def bpath_endpoints(G: BidirectedGraph, config: OracleConfig = DEFAULT_CONFIG, edges=None) -> Dict[Tuple, Set[Tuple]]:
    """For each start ``(x, alpha)`` the set of ends ``(y, beta)`` reached by some b-path."""
    bound = config.chain_bound(G)
    out = {}
    for x in G.vertices:
        for alpha in (1, -1):
            ends = set()
            for chain in _chains_from(G, x, alpha, bound, edges):
                last = chain[-1]
                ends.add((last.head, last.head_sign))
            out[(x, alpha)] = ends
    return out


def brute_closure(G: BidirectedGraph, config: OracleConfig = DEFAULT_CONFIG) -> frozenset:
    config.check(G)
    return _closure_of_edges(G, G.edges, config)


def _closure_of_edges(G, edges, config) -> frozenset:
    keys = set()
    for (x, alpha), ends in bpath_endpoints(G, config, edges).items():
        for y, beta in ends:
            keys.add(edge_key(x, alpha, y, beta))
    return frozenset(keys)


def brute_reductions(G: BidirectedGraph, config: OracleConfig = DEFAULT_CONFIG) -> Set[frozenset]:
    """Minimal partial graphs H whose closure contains every edge of G.

    An edge is implied by H exactly when some b-path of G between its
    ends uses only edges of H, so each edge's b-path edge sets are listed
    once (as bitmasks) and every subset of edges is tested against them.
    """
    config.check(G)
    bound = config.chain_bound(G)
    bit = {e.id: 1 << j for j, e in enumerate(G.edges)}
    supports = []
    for e in G.edges:
        masks = set()
        for chain in _chains_from(G, e.u, e.tau_u, bound):
            last = chain[-1]
            if last.head == e.v and last.head_sign == e.tau_v:
                m = 0
                for st in chain:
                    m |= bit[st.edge]
                masks.add(m)
        supports.append((bit[e.id], sorted(masks)))
    m_all = len(G.edges)
    minimal: List[int] = []
    for r in range(m_all + 1):
        for idx in itertools.combinations(range(m_all), r):
            H = 0
            for i in idx:
                H |= 1 << i
            if any(mm & H == mm for mm in minimal):
                continue
            if all(b & H or any(p & H == p for p in ps) for b, ps in supports):
                minimal.append(H)
    return {frozenset(e.id for j, e in enumerate(G.edges) if H >> j & 1) for H in minimal}


# --------------------------------------------------------------------------
# frame matroid by independence


class ParityUnionFind:
    """Union-find tracking the parity (product of edge signs) to each root, plus cycle state."""

    def __init__(self, items):
        self.parent = {v: v for v in items}
        self.parity = {v: 1 for v in items}
        self.size = {v: 1 for v in items}
        self.cycle_sign = {v: 0 for v in items}  # 0: none yet

    def find(self, v):
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress: parity to root is the product along the path
        acc = 1
        for node in reversed(path):
            acc *= self.parity[node]
            self.parity[node] = acc
            self.parent[node] = root
        return root

    def sign_to_root(self, v) -> int:
        self.find(v)
        return self.parity[v] if self.parent[v] != v else 1

    def add_edge(self, u, v, sign) -> bool:
        """Add an edge; False when it creates dependence (second cycle or positive cycle)."""
        ru, rv = self.find(u), self.find(v)
        pu, pv = self.sign_to_root(u), self.sign_to_root(v)
        if ru == rv:
            if self.cycle_sign[ru]:
                return False
            closed = pu * pv * sign
            if closed > 0:
                return False
            self.cycle_sign[ru] = closed
            return True
        if self.cycle_sign[ru] and self.cycle_sign[rv]:
            return False
        if self.size[ru] < self.size[rv]:
            ru, rv, pu, pv = rv, ru, pv, pu
        self.parent[rv] = ru
        self.parity[rv] = pu * pv * sign
        self.size[ru] += self.size[rv]
        self.cycle_sign[ru] = self.cycle_sign[ru] or self.cycle_sign[rv]
        return True


def is_independent(G: BidirectedGraph, F) -> bool:
    """Every component of (V, F) is a tree or has exactly one cycle, which is negative."""
    uf = ParityUnionFind(G.vertices)
    for eid in F:
        e = G.edge(eid)
        if not uf.add_edge(e.u, e.v, signature(e)):
            return False
    return True


def brute_circuits(G: BidirectedGraph, config: OracleConfig = DEFAULT_CONFIG) -> List[Tuple[frozenset, object]]:
    """Minimal dependent edge sets, each tagged with its circuit type."""
    from .matroid import classify_circuit

    config.check(G)
    ids = G.edge_ids
    found: List[frozenset] = []
    for r in range(1, len(ids) + 1):
        for combo in itertools.combinations(ids, r):
            F = frozenset(combo)
            if any(c <= F for c in found):
                continue
            if not is_independent(G, F):
                found.append(F)
    return [(F, classify_circuit(G, F)) for F in found]


def brute_rank(G: BidirectedGraph) -> int:
    """Size of a greedy basis; every basis of a matroid has the same size."""
    basis = []
    for e in G.edges:
        if is_independent(G, basis + [e.id]):
            basis.append(e.id)
    return len(basis)


# --------------------------------------------------------------------------
# classical digraphs


def as_digraph(G: BidirectedGraph) -> nx.DiGraph:
    """All-positive graph as a digraph: ``{x^-, y^+}`` is the arc ``x -> y``."""
    D = nx.DiGraph()
    D.add_nodes_from(G.vertices)
    for e in G.edges:
        if signature(e) < 0:
            raise ValueError(f"edge {e.id!r} is negative; not a digraph edge")
        tail, head = (e.u, e.v) if e.tau_u < 0 else (e.v, e.u)
        D.add_edge(tail, head)
    return D


def digraph_closure_keys(G: BidirectedGraph) -> frozenset:
    TC = nx.transitive_closure(as_digraph(G), reflexive=False)
    return frozenset(edge_key(a, -1, b, 1) for a, b in TC.edges)


def digraph_reduction_keys(G: BidirectedGraph) -> frozenset:
    TR = nx.transitive_reduction(as_digraph(G))
    return frozenset(edge_key(a, -1, b, 1) for a, b in TR.edges)


# --------------------------------------------------------------------------
# instance generators


def random_graph(
    rng: random.Random,
    max_vertices: int = 8,
    max_edges: int = 12,
    min_vertices: int = 2,
) -> BidirectedGraph:
    """Random bidirected multigraph.

    Vertex count uniform on ``[min_vertices, max_vertices]``, edge count
    uniform on ``[0, max_edges]``; each edge is a loop at a uniform vertex
    with probability ``1/|V|``, otherwise joins a uniform pair of distinct
    vertices; both half-edge signs are uniform.
    """
    n = rng.randint(min_vertices, max_vertices)
    m = rng.randint(0, max_edges)
    vertices = list(range(1, n + 1))
    edges = []
    for j in range(m):
        if n == 1 or rng.random() < 1.0 / n:
            u = v = rng.choice(vertices)
        else:
            u, v = rng.sample(vertices, 2)
        edges.append((f"e{j + 1}", u, rng.choice((1, -1)), v, rng.choice((1, -1))))
    return BidirectedGraph(vertices, edges)


def random_suite(seed: int, count: int, max_vertices: int = 8, max_edges: int = 12) -> List[BidirectedGraph]:
    rng = random.Random(seed)
    return [random_graph(rng, max_vertices, max_edges) for _ in range(count)]


def random_positive_dag(rng: random.Random, max_vertices: int = 8, max_edges: int = 14) -> BidirectedGraph:
    """All-positive bidirected graph whose digraph is a simple DAG (arcs go up a random order)."""
    n = rng.randint(2, max_vertices)
    vertices = list(range(1, n + 1))
    rank_of = {v: i for i, v in enumerate(rng.sample(vertices, n))}
    pairs = [(a, b) for a in vertices for b in vertices if rank_of[a] < rank_of[b]]
    chosen = rng.sample(pairs, rng.randint(0, min(max_edges, len(pairs))))
    edges = []
    for j, (a, b) in enumerate(chosen):
        if rng.random() < 0.5:
            edges.append((f"e{j + 1}", a, -1, b, 1))
        else:
            edges.append((f"e{j + 1}", b, 1, a, -1))
    return BidirectedGraph(vertices, edges)


def _edge_types(n: int) -> List[Tuple]:
    vs = range(1, n + 1)
    types = []
    for x in vs:
        for a, b in ((1, 1), (-1, -1), (-1, 1)):
            types.append((x, a, x, b))
    for x, y in itertools.combinations(vs, 2):
        for a in (1, -1):
            for b in (1, -1):
                types.append((x, a, y, b))
    return types


def _canonical(n: int, combo) -> Tuple:
    best = None
    for perm in itertools.permutations(range(1, n + 1)):
        relabel = dict(zip(range(1, n + 1), perm))
        form = tuple(sorted(edge_key(relabel[x], a, relabel[y], b) for x, a, y, b in combo))
        if best is None or form < best:
            best = form
    return best


def exhaustive_family(max_vertices: int = 3, max_edges: int = 4) -> Iterator[BidirectedGraph]:
    """Every bidirected multigraph on ``{1..n}``, ``n <= max_vertices``, with ``<= max_edges`` edges.

    One representative per isomorphism class under vertex relabelling; a
    representative's edges appear in canonical key order with ids ``e1..``.
    """
    for n in range(1, max_vertices + 1):
        types = _edge_types(n)
        seen = set()
        for m in range(max_edges + 1):
            for combo in itertools.combinations_with_replacement(types, m):
                form = _canonical(n, combo)
                if form in seen:
                    continue
                seen.add(form)
                edges = [(f"e{j + 1}", x, a, y, b) for j, ((x, a), (y, b)) in enumerate(form)]
                yield BidirectedGraph(range(1, n + 1), edges)
