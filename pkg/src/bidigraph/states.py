"""The state digraph: b-walks of a bidirected graph as ordinary directed walks.

A *state* ``(x, s)`` means "standing at ``x``, the next half-edge used must
have sign ``s``".  An edge ``{u^g, v^d}`` traversed from ``u`` leaves through
the ``g`` half-edge and arrives through ``d``; since the walk then has to
depart with ``-d``, it becomes the arc ``(u, g) -> (v, -d)``.  Traversed the
other way it is ``(v, d) -> (u, -g)``.

With the end-state convention ``alpha_k = -beta_k``, b-paths from ``x^a`` to
``y^b`` are exactly the simple state paths from ``(x, a)`` to ``(y, -b)``,
and b-circuits are exactly the simple state cycles.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .errors import CapExceededError, MalformedChainError
from .graph import BidirectedGraph, Sign, Vertex, sign_char


def state_index(vertex_index: int, s: Sign) -> int:
    return 2 * vertex_index + (0 if s > 0 else 1)


class Step(NamedTuple):
    """One traversed edge: leave ``tail`` by a ``tail_sign`` half-edge, arrive at ``head`` by ``head_sign``."""

    edge: object
    tail: Vertex
    tail_sign: Sign
    head: Vertex
    head_sign: Sign

    def reversed(self) -> "Step":
        return Step(self.edge, self.head, self.head_sign, self.tail, self.tail_sign)


@dataclass(frozen=True)
class BWalk:
    """A chain with its half-edge signs, read as a walk from ``x^alpha`` to ``y^beta``.

    Whether it is actually a b-walk (signs cancel at every interior vertex)
    or a b-path is checked by :func:`is_bwalk` / :func:`is_bpath`; the
    object itself is just the signed chain.
    """

    steps: Tuple[Step, ...]

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(*s) for s in self.steps))

    def __len__(self):
        return len(self.steps)

    @property
    def start(self) -> Tuple[Vertex, Sign]:
        return self.steps[0].tail, self.steps[0].tail_sign

    @property
    def end(self) -> Tuple[Vertex, Sign]:
        return self.steps[-1].head, self.steps[-1].head_sign

    @property
    def alpha(self) -> Sign:
        return self.steps[0].tail_sign

    @property
    def beta(self) -> Sign:
        return self.steps[-1].head_sign

    @property
    def edge_ids(self) -> Tuple:
        return tuple(s.edge for s in self.steps)

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        if not self.steps:
            return ()
        return (self.steps[0].tail,) + tuple(s.head for s in self.steps)

    @property
    def states(self) -> Tuple[Tuple[Vertex, Sign], ...]:
        """``(x_i, alpha_i)`` for ``i = 0..k`` with ``alpha_k = -beta``."""
        out = [(s.tail, s.tail_sign) for s in self.steps]
        if self.steps:
            out.append((self.steps[-1].head, -self.steps[-1].head_sign))
        return tuple(out)

    @property
    def sign(self) -> Sign:
        return bwalk_sign(self)

    @property
    def weight(self) -> int:
        return bwalk_weight(self)

    def reversed(self) -> "BWalk":
        return type(self)(tuple(s.reversed() for s in reversed(self.steps)))

    def edge_signs_product(self) -> Sign:
        p = 1
        for s in self.steps:
            p *= -s.tail_sign * s.head_sign
        return p

    def edge_weight_sum(self) -> int:
        return sum(s.tail_sign + s.head_sign for s in self.steps)

    def format(self, with_edges: bool = True) -> str:
        """``x- a b y-`` style rendering; interior vertices carry no sign."""
        if not self.steps:
            return "<empty>"
        vs = [str(v) for v in self.vertices]
        vs[0] += sign_char(self.alpha)
        vs[-1] += sign_char(self.beta)
        text = " ".join(vs)
        if with_edges:
            text += " via " + ",".join(str(e) for e in self.edge_ids)
        return text

    def __str__(self):
        return self.format()


class BPath(BWalk):
    """A BWalk produced by a search that guarantees the b-path conditions."""


def bwalk_sign(w: BWalk) -> Sign:
    """``-alpha * beta``; equal to the product of the edge signs for a genuine b-walk."""
    return -w.alpha * w.beta


def bwalk_weight(w: BWalk) -> int:
    """``alpha + beta``; equal to the summed edge weights for a genuine b-walk."""
    return w.alpha + w.beta


class StateDigraph:
    """Arc arrays of the state digraph of ``G`` plus the bookkeeping to map back.

    Arc ``2j`` is edge ``j`` traversed forward (``u`` to ``v``), arc ``2j+1``
    is the same edge backward.
    """

    def __init__(self, G: BidirectedGraph):
        self.graph = G
        n = len(G.vertices)
        m = len(G.edges)
        tails = np.empty(2 * m, dtype=np.int64)
        heads = np.empty(2 * m, dtype=np.int64)
        for j, e in enumerate(G.edges):
            iu, iv = G.vertex_index(e.u), G.vertex_index(e.v)
            tails[2 * j] = state_index(iu, e.tau_u)
            heads[2 * j] = state_index(iv, -e.tau_v)
            tails[2 * j + 1] = state_index(iv, e.tau_v)
            heads[2 * j + 1] = state_index(iu, -e.tau_u)
        self.tails = tails
        self.heads = heads
        self.arc_edge = np.repeat(np.arange(m, dtype=np.int64), 2)
        self.order = np.argsort(tails, kind="stable").astype(np.int64)
        counts = np.bincount(tails, minlength=2 * n)
        self.indptr = np.concatenate(([0], np.cumsum(counts))).astype(np.int64)
        self.n_states = 2 * n

    @property
    def n_arcs(self) -> int:
        return int(self.tails.shape[0])

    def state(self, v, s: Sign) -> int:
        return state_index(self.graph.vertex_index(v), s)

    def state_of(self, idx: int) -> Tuple[Vertex, Sign]:
        return self.graph.vertices[idx // 2], (1 if idx % 2 == 0 else -1)

    def arcs(self) -> List[Tuple[Tuple[Vertex, Sign], Tuple[Vertex, Sign], object, bool]]:
        """``(tail state, head state, edge id, forward)`` for every arc, in arc order."""
        out = []
        for a in range(self.n_arcs):
            e = self.graph.edges[a // 2]
            out.append((self.state_of(int(self.tails[a])), self.state_of(int(self.heads[a])), e.id, a % 2 == 0))
        return out

    def arc_step(self, a: int) -> Step:
        e = self.graph.edges[a // 2]
        if a % 2 == 0:
            return Step(e.id, e.u, e.tau_u, e.v, e.tau_v)
        return Step(e.id, e.v, e.tau_v, e.u, e.tau_u)

    def alive_mask(self, exclude: Iterable = ()) -> np.ndarray:
        alive = np.ones(len(self.graph.edges), dtype=np.bool_)
        for eid in exclude:
            alive[self.graph.edge_index(eid)] = False
        return alive

    def reach_from(self, src: int, alive=None) -> np.ndarray:
        if alive is None:
            alive = self.alive_mask()
        return kernels.reach_from(self.indptr, self.order, self.heads, self.arc_edge, alive, src)

    def reach_all(self, alive=None) -> np.ndarray:
        if alive is None:
            alive = self.alive_mask()
        return kernels.reach_all(self.indptr, self.order, self.heads, self.arc_edge, alive)

    def shortest_path(self, src: int, dst: int, alive=None) -> Optional[List[int]]:
        """Arc ids of a shortest walk of >= 1 arc from ``src`` to ``dst`` (simple), or None."""
        if alive is None:
            alive = self.alive_mask()
        parent = kernels.bfs_tree(self.indptr, self.order, self.heads, self.arc_edge, alive, src)
        if parent[dst] < 0:
            return None
        arcs = []
        cur = dst
        while True:
            a = int(parent[cur])
            arcs.append(a)
            cur = int(self.tails[a])
            if cur == src:
                break
        arcs.reverse()
        return arcs

    def path_to_bpath(self, arcs: Sequence[int]) -> BPath:
        return BPath(tuple(self.arc_step(a) for a in arcs))


def build_state_digraph(G: BidirectedGraph) -> StateDigraph:
    return StateDigraph(G)


def _as_sd(G_or_sd) -> StateDigraph:
    return G_or_sd if isinstance(G_or_sd, StateDigraph) else StateDigraph(G_or_sd)


def exists_bwalk(SD, x, alpha: Sign, y, beta: Sign, exclude: Iterable = ()) -> bool:
    """Is there a b-walk (hence a b-path) from ``x^alpha`` to ``y^beta``?"""
    SD = _as_sd(SD)
    src, dst = SD.state(x, alpha), SD.state(y, -beta)
    return bool(SD.reach_from(src, SD.alive_mask(exclude))[dst])


def find_bpath(SD, x, alpha: Sign, y, beta: Sign, exclude: Iterable = ()) -> Optional[BPath]:
    """Shortest b-path from ``x^alpha`` to ``y^beta`` avoiding ``exclude``, or None.

    Ties are broken breadth-first in arc order.  With ``x == y`` and
    ``alpha == -beta`` the result is a b-circuit.
    """
    SD = _as_sd(SD)
    src, dst = SD.state(x, alpha), SD.state(y, -beta)
    arcs = SD.shortest_path(src, dst, SD.alive_mask(exclude))
    return None if arcs is None else SD.path_to_bpath(arcs)


def _usable_out_arcs(SD: StateDigraph, exclude: Iterable) -> List[List[int]]:
    alive = SD.alive_mask(exclude)
    edges = SD.graph.edges

    def usable(a):
        e = edges[a // 2]
        # both traversals of a loop with equal end signs are the same signed chain
        return alive[a // 2] and not (a % 2 and e.is_loop and e.tau_u == e.tau_v)

    return [[int(a) for a in SD.order[SD.indptr[s]:SD.indptr[s + 1]] if usable(int(a))] for s in range(SD.n_states)]


def enumerate_bpaths(SD, x, alpha: Sign, y, beta: Sign, cap: int = 10_000, exclude: Iterable = ()) -> List[BPath]:
    """Every b-path from ``x^alpha`` to ``y^beta`` (simple state paths), depth-first in arc order.

    Raises :class:`CapExceededError` rather than truncating.
    """
    SD = _as_sd(SD)
    src, dst = SD.state(x, alpha), SD.state(y, -beta)
    out_arcs = _usable_out_arcs(SD, exclude)
    found: List[BPath] = []
    on_path = np.zeros(SD.n_states, dtype=bool)
    path: List[int] = []

    def dfs(s):
        for a in out_arcs[s]:
            h = int(SD.heads[a])
            if h == dst:
                path.append(a)
                found.append(SD.path_to_bpath(path))
                path.pop()
                if len(found) > cap:
                    raise CapExceededError(f"more than {cap} b-paths", cap)
            if on_path[h] or h == dst:
                continue
            on_path[h] = True
            path.append(a)
            dfs(h)
            path.pop()
            on_path[h] = False

    on_path[src] = True
    dfs(src)
    return found


def enumerate_bpaths_from(SD, x, alpha: Sign, cap: int = 10_000, exclude: Iterable = ()) -> Dict[Tuple, List[BPath]]:
    """Every b-path starting at ``x^alpha``, grouped by its end ``(y, beta)``."""
    SD = _as_sd(SD)
    src = SD.state(x, alpha)
    out_arcs = _usable_out_arcs(SD, exclude)
    found: Dict[Tuple, List[BPath]] = {}
    count = 0
    on_path = np.zeros(SD.n_states, dtype=bool)
    path: List[int] = []

    def dfs(s):
        nonlocal count
        for a in out_arcs[s]:
            h = int(SD.heads[a])
            if on_path[h] and h != src:
                continue
            path.append(a)
            v, t = SD.state_of(h)
            found.setdefault((v, -t), []).append(SD.path_to_bpath(path))
            count += 1
            if count > cap:
                raise CapExceededError(f"more than {cap} b-paths", cap)
            if h != src:
                on_path[h] = True
                dfs(h)
                on_path[h] = False
            path.pop()

    on_path[src] = True
    dfs(src)
    return found


def has_bcircuit(G_or_sd) -> bool:
    """True iff the state digraph has a directed cycle."""
    SD = _as_sd(G_or_sd)
    if SD.n_arcs == 0:
        return False
    return bool(np.diagonal(SD.reach_all()).any())


def find_bcircuit(G_or_sd) -> Optional[BPath]:
    """Some b-circuit (shortest through the first state lying on a cycle), or None."""
    SD = _as_sd(G_or_sd)
    if SD.n_arcs == 0:
        return None
    diag = np.diagonal(SD.reach_all())
    hits = np.flatnonzero(diag)
    if hits.size == 0:
        return None
    s = int(hits[0])
    return SD.path_to_bpath(SD.shortest_path(s, s))


# --------------------------------------------------------------------------
# checking given chains


def _check_chain(G: BidirectedGraph, walk: BWalk) -> None:
    for i, st in enumerate(walk.steps):
        e = G.edge(st.edge) if st.edge in G else None
        if e is None:
            raise MalformedChainError(f"step {i}: edge {st.edge!r} is not in the graph")
        fwd = (e.u, e.tau_u, e.v, e.tau_v)
        bwd = (e.v, e.tau_v, e.u, e.tau_u)
        if tuple(st[1:]) not in (fwd, bwd):
            raise MalformedChainError(f"step {i}: {tuple(st[1:])} does not match edge {e}")
        if i and walk.steps[i - 1].head != st.tail:
            raise MalformedChainError(f"step {i}: chain breaks between {walk.steps[i - 1].head!r} and {st.tail!r}")


def is_bwalk(G: BidirectedGraph, walk: BWalk) -> bool:
    """Conditions (i)-(iii): at least one edge and cancelling signs at every interior vertex."""
    _check_chain(G, walk)
    if len(walk) < 1:
        return False
    return all(a.head_sign + b.tail_sign == 0 for a, b in zip(walk.steps, walk.steps[1:]))


def is_bpath(G: BidirectedGraph, walk: BWalk) -> bool:
    """b-walk whose states ``(x_i, alpha_i)`` never repeat, except first == last."""
    if not is_bwalk(G, walk):
        return False
    states = walk.states
    k = len(states) - 1
    seen = {}
    for i, st in enumerate(states):
        if st in seen and not (seen[st] == 0 and i == k):
            return False
        seen.setdefault(st, i)
    return True


def is_bcircuit(G: BidirectedGraph, walk: BWalk) -> bool:
    return is_bpath(G, walk) and walk.start[0] == walk.end[0] and walk.alpha == -walk.beta


def make_walk(G: BidirectedGraph, start, edge_ids: Sequence, start_sign: Optional[Sign] = None) -> BWalk:
    """Orient a sequence of edge ids into a BWalk starting at ``start``.

    Non-loop edges are oriented away from the current vertex.  A loop is
    oriented to cancel the previous arrival sign when possible (or to leave by
    ``start_sign`` as the first step).
    """
    G.check_vertex(start)
    steps = []
    cur = start
    want = start_sign
    for eid in edge_ids:
        e = G.edge(eid)
        options = []
        if e.u == cur:
            options.append(Step(e.id, e.u, e.tau_u, e.v, e.tau_v))
        if e.v == cur:
            options.append(Step(e.id, e.v, e.tau_v, e.u, e.tau_u))
        if not options:
            raise MalformedChainError(f"edge {eid!r} is not incident with {cur!r}")
        pick = options[0]
        if want is not None:
            for o in options:
                if o.tail_sign == want:
                    pick = o
                    break
        steps.append(pick)
        cur = pick.head
        want = -pick.head_sign
    return BWalk(tuple(steps))


# --------------------------------------------------------------------------
# cyclic b-paths


class CyclicKind(str, enum.Enum):
    NOT_CYCLIC = "not_cyclic"
    PURELY_CYCLIC = "purely_cyclic"
    TYPE_A = "type_a"
    TYPE_B = "type_b"
    TYPE_C = "type_c"


def _is_cycle_segment(steps: Sequence[Step]) -> bool:
    if not steps or steps[0].tail != steps[-1].head:
        return False
    verts = [s.tail for s in steps]
    edges = [s.edge for s in steps]
    return len(set(verts)) == len(verts) and len(set(edges)) == len(edges)


def cycle_segments(p: BWalk) -> List[Tuple[int, int]]:
    """Index ranges ``(i, j)`` where ``steps[i:j]`` traces an elementary cycle."""
    k = len(p)
    out = []
    for i in range(k):
        for j in range(i + 1, k + 1):
            if _is_cycle_segment(p.steps[i:j]):
                out.append((i, j))
    return out


def classify_cyclic_bpath(G: BidirectedGraph, p: BWalk) -> CyclicKind:
    """Place a b-path among: not cyclic, purely cyclic, or cyclic of type a/b/c.

    Purely cyclic: the whole chain is one elementary cycle.  Cyclic: exactly
    one contiguous piece is an elementary cycle and that cycle is negative.
    The cycle is entered and left at one vertex ``v``; then

    * type a: both ``x`` and ``y`` lie off the cycle on edge-disjoint tails
      (``x == y`` allowed, closing a second cycle);
    * type b: one of ``x``, ``y`` is ``v`` itself;
    * type c: the two tails share a stem ending at ``v``.
    """
    if not is_bpath(G, p):
        raise MalformedChainError("not a b-path")
    k = len(p)
    segs = cycle_segments(p)
    if (0, k) in segs:
        return CyclicKind.PURELY_CYCLIC
    if len(segs) != 1:
        return CyclicKind.NOT_CYCLIC
    i, j = segs[0]
    cyc = BWalk(p.steps[i:j])
    if cyc.edge_signs_product() > 0:
        return CyclicKind.NOT_CYCLIC
    if i == 0 or j == k:
        return CyclicKind.TYPE_B
    before = {s.edge for s in p.steps[:i]}
    after = {s.edge for s in p.steps[j:]}
    return CyclicKind.TYPE_C if before & after else CyclicKind.TYPE_A


def cycle_vertex_weight(p: BWalk, segment: Tuple[int, int]) -> int:
    """``W_C(v)`` at the vertex where the cycle segment is entered and left."""
    i, j = segment
    return p.steps[i].tail_sign + p.steps[j - 1].head_sign
