"""Compiled all-nodes symmetry sweep.

Array re-implementation of the per-node pipeline in ``concentric`` over
the CSR adjacency, JIT-compiled with numba when available. Each center
is independent, so the outer loop parallelizes freely and results are
bit-identical for any thread count. Without numba the same functions
run interpreted (correct but slow; ``symmetry_all`` then prefers the
object path).
"""

from __future__ import annotations

import math

import numpy as np

try:
    import numba
    from numba import njit, prange

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a regular dependency
    numba = None
    HAVE_NUMBA = False
    prange = range

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(fn):
            return fn

        return wrap


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def _center_value(indptr, indices, center, h, merged):
    """Symmetry of one center; NaN when the center is isolated.

    BFS assigns ring distances (queue stays sorted by distance), an
    optional union-find pass merges intra-ring components, and a single
    ordered sweep pushes mass outward: by the time a ring is processed
    every contribution from the ring below has landed.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    dist[center] = 0
    queue[0] = center
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du == h:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    if tail == 1:
        return np.nan

    parent = np.empty(n, np.int32)
    for t in range(tail):
        parent[queue[t]] = queue[t]
    if merged:
        size = np.ones(n, np.int32)
        for t in range(1, tail):
            u = queue[t]
            du = dist[u]
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if v > u and dist[v] == du:
                    ru = _find(parent, u)
                    rv = _find(parent, v)
                    if ru != rv:
                        if size[ru] < size[rv]:
                            ru, rv = rv, ru
                        parent[rv] = ru
                        size[ru] += size[rv]

    # Total outgoing edge weight per super-node (edges to the next ring
    # each count 1; merging sums them on the component root).
    out_weight = np.zeros(n, np.float64)
    for t in range(tail):
        u = queue[t]
        du = dist[u]
        if du == h:
            continue
        cnt = 0
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] == du + 1:
                cnt += 1
        if cnt > 0:
            out_weight[_find(parent, u)] += cnt

    mass = np.zeros(n, np.float64)
    mass[center] = 1.0
    entropy = 0.0
    outcomes = 0
    for t in range(tail):
        u = queue[t]
        du = dist[u]
        root = _find(parent, u)
        if du == h:
            if root == u:
                p = mass[u]
                entropy -= p * math.log(p)
                outcomes += 1
            continue
        if out_weight[root] == 0.0:
            if root == u:  # dead end: mass stays put, one terminal outcome
                p = mass[u]
                entropy -= p * math.log(p)
                outcomes += 1
            continue
        share = mass[root] / out_weight[root]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] == du + 1:
                mass[_find(parent, v)] += share
    return math.exp(entropy) / outcomes


@njit(cache=True, parallel=True)
def _sweep_kernel(indptr, indices, h, merged):
    n = indptr.shape[0] - 1
    out = np.empty(n, np.float64)
    for c in prange(n):
        out[c] = _center_value(indptr, indices, c, h, merged)
    return out


def sweep_values(net, h: int, kind: str, threads: int | None = None) -> np.ndarray:
    """All-nodes symmetry values as a float array (NaN = undefined)."""
    indptr, indices = net.csr()
    merged = kind == "merged"
    if not HAVE_NUMBA:
        out = np.empty(net.node_count, np.float64)
        for c in range(net.node_count):
            out[c] = _center_value(indptr, indices, c, h, merged)
        return out
    if threads is None:
        return _sweep_kernel(indptr, indices, h, merged)
    limit = numba.config.NUMBA_NUM_THREADS
    previous = numba.get_num_threads()
    numba.set_num_threads(max(1, min(threads, limit)))
    try:
        return _sweep_kernel(indptr, indices, h, merged)
    finally:
        numba.set_num_threads(previous)
