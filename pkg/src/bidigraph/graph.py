"""Bidirected graphs: half-edge signs, weights, switching and balance."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Optional, Sequence, Tuple, Union

from .errors import GraphError, UnknownEdgeError, UnknownVertexError

Sign = int  # +1 or -1
Vertex = Hashable
Incidence = Tuple[Vertex, Sign]
EdgeKey = Tuple[Incidence, Incidence]

PLUS: Sign = 1
MINUS: Sign = -1


def check_sign(s) -> Sign:
    if s is True or s is False or s not in (1, -1):
        raise GraphError(f"sign must be +1 or -1, got {s!r}")
    return int(s)


def sign_char(s: Sign) -> str:
    return "+" if s > 0 else "-"


def edge_key(x: Vertex, alpha: Sign, y: Vertex, beta: Sign) -> EdgeKey:
    """Canonical ``{x^alpha, y^beta}``: the two incidences sorted by (vertex, sign)."""
    a, b = (x, alpha), (y, beta)
    return (a, b) if a <= b else (b, a)


def format_key(key: EdgeKey) -> str:
    (x, a), (y, b) = key
    return f"{x}{sign_char(a)},{y}{sign_char(b)}"


def switch_key(key: EdgeKey, X) -> EdgeKey:
    (x, a), (y, b) = key
    return edge_key(x, -a if x in X else a, y, -b if y in X else b)


@dataclass(frozen=True)
class Edge:
    """One edge with its two half-edge signs.

    For a loop (``u == v``) ``tau_u`` and ``tau_v`` are the signs of its two
    half-edges, kept in declaration order.
    """

    id: Hashable
    u: Vertex
    tau_u: Sign
    v: Vertex
    tau_v: Sign

    def __post_init__(self):
        check_sign(self.tau_u)
        check_sign(self.tau_v)

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    @property
    def sign(self) -> Sign:
        return signature(self)

    @property
    def weight(self) -> int:
        return edge_weight(self)

    @property
    def key(self) -> EdgeKey:
        return edge_key(self.u, self.tau_u, self.v, self.tau_v)

    def half_edges(self) -> Tuple[Incidence, Incidence]:
        return (self.u, self.tau_u), (self.v, self.tau_v)

    def tau(self, x: Vertex) -> int:
        """Total half-edge sign at ``x`` (0 if not incident, both signs for a loop)."""
        t = 0
        if self.u == x:
            t += self.tau_u
        if self.v == x:
            t += self.tau_v
        return t

    def negated_at(self, X) -> "Edge":
        return Edge(
            self.id,
            self.u,
            -self.tau_u if self.u in X else self.tau_u,
            self.v,
            -self.tau_v if self.v in X else self.tau_v,
        )

    def __str__(self):
        return f"{self.id}={{{self.u}{sign_char(self.tau_u)},{self.v}{sign_char(self.tau_v)}}}"


EdgeLike = Union[Edge, Sequence]


def _as_edge(e: EdgeLike) -> Edge:
    if isinstance(e, Edge):
        return e
    try:
        eid, u, su, v, sv = e
    except (TypeError, ValueError):
        raise GraphError(f"cannot interpret {e!r} as (id, u, tau_u, v, tau_v)") from None
    return Edge(eid, u, check_sign(su), v, check_sign(sv))


class BidirectedGraph:
    """Immutable multigraph whose half-edges carry signs.

    ``edges`` keeps declaration order, which is the default linear order used
    by transitive reduction.  Parallel edges and loops are allowed; edge ids
    must be unique.
    """

    __slots__ = ("_vertices", "_edges", "_vindex", "_eindex")

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[EdgeLike] = ()):
        vs = []
        vindex = {}
        for v in vertices:
            if v in vindex:
                raise GraphError(f"duplicate vertex {v!r}")
            vindex[v] = len(vs)
            vs.append(v)
        es = []
        eindex = {}
        for raw in edges:
            e = _as_edge(raw)
            if e.id in eindex:
                raise GraphError(f"duplicate edge id {e.id!r}")
            for end in (e.u, e.v):
                if end not in vindex:
                    raise GraphError(f"edge {e.id!r} uses undeclared vertex {end!r}")
            eindex[e.id] = len(es)
            es.append(e)
        self._vertices = tuple(vs)
        self._edges = tuple(es)
        self._vindex = vindex
        self._eindex = eindex

    @classmethod
    def from_edges(cls, edges: Iterable[EdgeLike], vertices: Iterable[Vertex] = ()) -> "BidirectedGraph":
        """Build a graph, declaring endpoints in first-seen order after ``vertices``."""
        edges = [_as_edge(e) for e in edges]
        vs = list(dict.fromkeys(vertices))
        seen = set(vs)
        for e in edges:
            for end in (e.u, e.v):
                if end not in seen:
                    seen.add(end)
                    vs.append(end)
        return cls(vs, edges)

    # -- basic access -----------------------------------------------------

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return self._vertices

    @property
    def edges(self) -> Tuple[Edge, ...]:
        return self._edges

    @property
    def edge_ids(self) -> Tuple[Hashable, ...]:
        return tuple(e.id for e in self._edges)

    def __len__(self):
        return len(self._edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._edges)

    def __contains__(self, edge_id) -> bool:
        return edge_id in self._eindex

    def __eq__(self, other):
        if not isinstance(other, BidirectedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return f"BidirectedGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    def edge(self, edge_id) -> Edge:
        try:
            return self._edges[self._eindex[edge_id]]
        except KeyError:
            raise UnknownEdgeError(edge_id) from None

    def edge_index(self, edge_id) -> int:
        try:
            return self._eindex[edge_id]
        except KeyError:
            raise UnknownEdgeError(edge_id) from None

    def vertex_index(self, v) -> int:
        try:
            return self._vindex[v]
        except (KeyError, TypeError):
            raise UnknownVertexError(v) from None

    def has_vertex(self, v) -> bool:
        try:
            return v in self._vindex
        except TypeError:
            return False

    def check_vertex(self, v) -> None:
        if not self.has_vertex(v):
            raise UnknownVertexError(v)

    def keys(self) -> frozenset:
        """The set of SignedEdgeKeys realised by at least one edge."""
        return frozenset(e.key for e in self._edges)

    def incident(self, x) -> Iterator[Edge]:
        self.check_vertex(x)
        return (e for e in self._edges if e.u == x or e.v == x)

    def half_edges(self) -> Iterator[Tuple[Edge, Vertex, Sign]]:
        """Every half-edge ``(e, vertex, sign)``; a loop yields two."""
        for e in self._edges:
            yield e, e.u, e.tau_u
            yield e, e.v, e.tau_v

    # -- derived graphs ---------------------------------------------------

    def partial(self, edge_ids: Iterable) -> "BidirectedGraph":
        """Partial graph on the same vertices keeping the given edge ids (original order)."""
        keep = set(edge_ids)
        for eid in keep:
            if eid not in self._eindex:
                raise UnknownEdgeError(eid)
        return BidirectedGraph(self._vertices, [e for e in self._edges if e.id in keep])

    def without(self, edge_ids: Iterable) -> "BidirectedGraph":
        drop = set(edge_ids)
        for eid in drop:
            if eid not in self._eindex:
                raise UnknownEdgeError(eid)
        return BidirectedGraph(self._vertices, [e for e in self._edges if e.id not in drop])

    def with_edges(self, edges: Iterable[EdgeLike]) -> "BidirectedGraph":
        return BidirectedGraph(self._vertices, list(self._edges) + [_as_edge(e) for e in edges])

    def is_partial_graph_of(self, other: "BidirectedGraph") -> bool:
        if set(self._vertices) - set(other._vertices):
            return False
        return all(e.id in other._eindex and other.edge(e.id) == e for e in self._edges)


# --------------------------------------------------------------------------
# weights and signs


def signature(e: Edge) -> Sign:
    """Edge sign induced by the half-edge signs: ``-tau_u * tau_v``."""
    return -e.tau_u * e.tau_v


def edge_weight(e: Edge) -> int:
    return e.tau_u + e.tau_v


def vertex_weight(G: BidirectedGraph, x) -> int:
    """Positive minus negative half-edges at ``x``; a loop contributes both of its ends."""
    G.check_vertex(x)
    return sum(e.tau(x) for e in G.edges)


def sources_and_sinks(G: BidirectedGraph) -> Tuple[frozenset, frozenset]:
    has_plus = set()
    has_minus = set()
    for _, x, s in G.half_edges():
        (has_plus if s > 0 else has_minus).add(x)
    sources = frozenset(v for v in G.vertices if v not in has_minus)
    sinks = frozenset(v for v in G.vertices if v not in has_plus)
    return sources, sinks


def switch(G: BidirectedGraph, X: Iterable) -> BidirectedGraph:
    """Negate every half-edge sign at the vertices of ``X``."""
    X = frozenset(X)
    for x in X:
        G.check_vertex(x)
    return BidirectedGraph(G.vertices, [e.negated_at(X) for e in G.edges])


def is_all_positive(G: BidirectedGraph) -> bool:
    return all(signature(e) > 0 for e in G.edges)


def is_all_negative(G: BidirectedGraph) -> bool:
    return all(signature(e) < 0 for e in G.edges)


# --------------------------------------------------------------------------
# components and balance


def connected_components(G: BidirectedGraph) -> list:
    """Vertex sets of the connected components, ordered by their first vertex."""
    adj = {v: [] for v in G.vertices}
    for e in G.edges:
        adj[e.u].append(e.v)
        adj[e.v].append(e.u)
    seen = set()
    comps = []
    for root in G.vertices:
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def switching_function(G: BidirectedGraph, negate_all: bool = False):
    """Try to find ``s: V -> {+1,-1}`` with ``s(u) s(v) = sigma(e)`` on every edge.

    Works component by component; each component's first vertex (in vertex
    order) gets +1.  Returns ``(s, balanced)`` where ``balanced`` maps each
    component root to whether that component admits such an ``s``.  With
    ``negate_all`` every edge sign is flipped first.
    """
    adj = {v: [] for v in G.vertices}
    bad_loop_at = set()
    for e in G.edges:
        sgn = -signature(e) if negate_all else signature(e)
        if e.is_loop:
            if sgn < 0:
                bad_loop_at.add(e.u)
            continue
        adj[e.u].append((e.v, sgn))
        adj[e.v].append((e.u, sgn))
    s = {}
    balanced = {}
    for root in G.vertices:
        if root in s:
            continue
        s[root] = PLUS
        ok = root not in bad_loop_at
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y, sgn in adj[x]:
                want = s[x] * sgn
                if y not in s:
                    s[y] = want
                    ok = ok and y not in bad_loop_at
                    queue.append(y)
                elif s[y] != want:
                    ok = False
        balanced[root] = ok
    return s, balanced


def is_balanced(G: BidirectedGraph) -> bool:
    return all(switching_function(G)[1].values())


def balancing_switch_set(G: BidirectedGraph) -> Optional[frozenset]:
    """Vertices to switch so that every edge becomes positive, or ``None`` if unbalanced."""
    s, balanced = switching_function(G)
    if not all(balanced.values()):
        return None
    return frozenset(v for v in G.vertices if s[v] < 0)


def is_antibalanced(G: BidirectedGraph) -> bool:
    return all(switching_function(G, negate_all=True)[1].values())


def balanced_component_count(G: BidirectedGraph) -> int:
    """Number of connected components that are balanced (isolated vertices count)."""
    return sum(switching_function(G)[1].values())
