"""Reachability kernels over the state digraph.

Every kernel works on the same flat arc arrays:

``indptr``/``order``
    CSR grouping of arc ids by tail state; within a tail the arc ids are
    increasing, so scanning ``order[indptr[s]:indptr[s + 1]]`` visits the arcs
    of ``s`` in declaration order.
``tails``/``heads``/``arc_edge``
    per-arc tail state, head state and index of the underlying edge.
``edge_alive``
    boolean mask over edges; arcs of dead edges are ignored.  This is how
    "G minus e" queries run without rebuilding anything.

Reachability here always means "by a walk of at least one arc": the source
state is only marked when some arc leads back into it.

Two implementations exist for each kernel, a numba one (``_nb_*``) and a
vectorised numpy one (``_np_*``).  The public names dispatch on
:func:`bidigraph._accel.requested_backend`, evaluated at call time so tests
and benchmarks can flip ``BIDIGRAPH_BACKEND`` without re-importing.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit, requested_backend

__all__ = ["reach_from", "reach_all", "bfs_tree"]


# --------------------------------------------------------------------------
# numba kernels


@njit
def _nb_reach_from(indptr, order, heads, arc_edge, edge_alive, src):
    n = indptr.shape[0] - 1
    reached = np.zeros(n, dtype=np.bool_)
    stack = np.empty(n + 1, dtype=np.int64)
    top = 0
    stack[top] = src
    top += 1
    expanded_src = False
    while top > 0:
        top -= 1
        s = stack[top]
        if s == src:
            if expanded_src:
                continue
            expanded_src = True
        for p in range(indptr[s], indptr[s + 1]):
            a = order[p]
            if not edge_alive[arc_edge[a]]:
                continue
            h = heads[a]
            if not reached[h]:
                reached[h] = True
                stack[top] = h
                top += 1
    return reached


@njit
def _nb_reach_all(indptr, order, heads, arc_edge, edge_alive):
    n = indptr.shape[0] - 1
    out = np.zeros((n, n), dtype=np.bool_)
    for src in range(n):
        out[src, :] = _nb_reach_from(indptr, order, heads, arc_edge, edge_alive, src)
    return out


@njit
def _nb_bfs_tree(indptr, order, heads, arc_edge, edge_alive, src):
    n = indptr.shape[0] - 1
    parent = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n + 1, dtype=np.int64)
    head_ptr = 0
    tail_ptr = 0
    queue[tail_ptr] = src
    tail_ptr += 1
    while head_ptr < tail_ptr:
        s = queue[head_ptr]
        head_ptr += 1
        for p in range(indptr[s], indptr[s + 1]):
            a = order[p]
            if not edge_alive[arc_edge[a]]:
                continue
            h = heads[a]
            if visited[h]:
                continue
            visited[h] = True
            parent[h] = a
            if h != src:
                queue[tail_ptr] = h
                tail_ptr += 1
    return parent


# --------------------------------------------------------------------------
# numpy fallbacks


def _alive_arcs(arc_edge, edge_alive):
    if arc_edge.size == 0:
        return np.zeros(0, dtype=bool)
    return np.asarray(edge_alive, dtype=bool)[arc_edge]


def _np_reach_from(indptr, order, heads, arc_edge, edge_alive, src):
    n = indptr.shape[0] - 1
    tails = np.repeat(np.arange(n), np.diff(indptr))
    heads_o = heads[order]
    alive = _alive_arcs(arc_edge[order], edge_alive)
    reached = np.zeros(n, dtype=bool)
    frontier = np.zeros(n, dtype=bool)
    frontier[src] = True
    while True:
        hits = heads_o[alive & frontier[tails]]
        new = np.zeros(n, dtype=bool)
        new[hits] = True
        new &= ~reached
        if not new.any():
            return reached
        reached |= new
        frontier = new


def _np_reach_all(indptr, order, heads, arc_edge, edge_alive):
    # one vectorised frontier search per source; dense squaring is O(n^3 log n)
    n = indptr.shape[0] - 1
    reach = np.zeros((n, n), dtype=bool)
    for s in range(n):
        reach[s] = _np_reach_from(indptr, order, heads, arc_edge, edge_alive, s)
    return reach


def _np_bfs_tree(indptr, order, heads, arc_edge, edge_alive, src):
    n = indptr.shape[0] - 1
    parent = np.full(n, -1, dtype=np.int64)
    visited = np.zeros(n, dtype=bool)
    edge_alive = np.asarray(edge_alive, dtype=bool)
    level = np.array([src], dtype=np.int64)
    while level.size:
        starts = indptr[level]
        counts = indptr[level + 1] - starts
        total = int(counts.sum())
        if total == 0:
            break
        # positions order[starts[i] .. starts[i]+counts[i]) for each node, in queue order
        offsets = np.repeat(starts - np.concatenate(([0], np.cumsum(counts)[:-1])), counts)
        arcs = order[np.arange(total) + offsets]
        arcs = arcs[edge_alive[arc_edge[arcs]]]
        hs = heads[arcs]
        fresh = ~visited[hs]
        arcs, hs = arcs[fresh], hs[fresh]
        if hs.size == 0:
            break
        _, first = np.unique(hs, return_index=True)
        first.sort()
        arcs, hs = arcs[first], hs[first]
        visited[hs] = True
        parent[hs] = arcs
        level = hs[hs != src]
    return parent


# --------------------------------------------------------------------------
# dispatch


def _pick(nb, nq, backend):
    backend = backend or requested_backend()
    return nb if backend == "numba" else nq


def reach_from(indptr, order, heads, arc_edge, edge_alive, src, backend=None):
    """States reachable from ``src`` by a walk of one or more live arcs."""
    fn = _pick(_nb_reach_from, _np_reach_from, backend)
    return fn(indptr, order, heads, arc_edge, np.asarray(edge_alive, dtype=np.bool_), int(src))


def reach_all(indptr, order, heads, arc_edge, edge_alive, backend=None):
    """Boolean matrix ``R`` with ``R[s, t]`` iff ``t`` is reachable from ``s`` (>= 1 arc)."""
    fn = _pick(_nb_reach_all, _np_reach_all, backend)
    return fn(indptr, order, heads, arc_edge, np.asarray(edge_alive, dtype=np.bool_))


def bfs_tree(indptr, order, heads, arc_edge, edge_alive, src, backend=None):
    """Breadth-first parent arcs from ``src``; -1 where unreached.

    ``src`` gets a parent only if a cycle returns to it.  Ties are broken by
    queue order, then by arc order, identically in both backends.
    """
    fn = _pick(_nb_bfs_tree, _np_bfs_tree, backend)
    return fn(indptr, order, heads, arc_edge, np.asarray(edge_alive, dtype=np.bool_), int(src))
