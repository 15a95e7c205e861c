"""Reference implementations used by ``--verify`` and by the test suite.

These work on plain adjacency lists built straight from the CSR arrays and
share no code with the library's algorithms.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Optional

import numpy as np

from ..core import SparseMatrix

CLIQUE_LIMIT = 2000


def adjacency(A: SparseMatrix, weighted: bool = False) -> list:
    """Out-neighbour lists; with ``weighted`` each entry is ``(j, w)``."""
    out = []
    cols = A.col_idx.tolist()
    vals = A.values.astype(np.float64).tolist()
    ptr = A.row_ptr.tolist()
    for i in range(A.nrows):
        lo, hi = ptr[i], ptr[i + 1]
        out.append(list(zip(cols[lo:hi], vals[lo:hi])) if weighted else cols[lo:hi])
    return out


def bfs_levels(adj: list, source: int) -> np.ndarray:
    level = np.full(len(adj), -1, dtype=np.int64)
    level[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def check_bfs(adj: list, source: int, parent: np.ndarray,
              level: Optional[np.ndarray] = None) -> Optional[str]:
    """First problem with a BFS result, or ``None``.

    ``parent`` is dense with ``-1`` for unreached nodes.  Every reached
    non-source node must hang off an edge from a node exactly one level up.
    """
    want = bfs_levels(adj, source)
    reached = parent >= 0
    if not np.array_equal(reached, want >= 0):
        bad = int(np.flatnonzero(reached != (want >= 0))[0])
        return f"node {bad}: reached={bool(reached[bad])}, oracle reached={bool(want[bad] >= 0)}"
    if parent[source] != source:
        return f"source {source} has parent {parent[source]}"
    for v in np.flatnonzero(reached).tolist():
        if v == source:
            continue
        p = int(parent[v])
        if v not in adj[p]:
            return f"node {v}: parent {p} has no edge to it"
        if want[p] != want[v] - 1:
            return f"node {v}: parent {p} is at level {want[p]}, node at {want[v]}"
    if level is not None and not np.array_equal(level, want):
        bad = int(np.flatnonzero(level != want)[0])
        return f"node {bad}: level {level[bad]}, oracle {want[bad]}"
    return None


def brandes(adj: list, sources) -> np.ndarray:
    """Unnormalized directed betweenness summed over ``sources``."""
    n = len(adj)
    bc = np.zeros(n)
    for s in np.atleast_1d(sources).tolist():
        order = []
        preds = [[] for _ in range(n)]
        sigma = np.zeros(n)
        sigma[s] = 1.0
        dist = np.full(n, -1)
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
                if dist[v] == dist[u] + 1:
                    sigma[v] += sigma[u]
                    preds[v].append(u)
        delta = np.zeros(n)
        for w in reversed(order):
            for u in preds[w]:
                delta[u] += sigma[u] / sigma[w] * (1.0 + delta[w])
            if w != s:
                bc[w] += delta[w]
    return bc


def pagerank_iterates(A: SparseMatrix, damping: float = 0.85, tol: float = 1e-4,
                      itermax: int = 100) -> list:
    """Dense power iteration of the GAP recurrence; one array per iteration."""
    n = A.nrows
    if n == 0:
        return []
    dense = np.zeros((n, n))
    dense[A.row_indices(), A.col_idx] = 1.0
    outdeg = dense.sum(axis=1)
    r = np.full(n, 1.0 / n)
    out = []
    for _ in range(itermax):
        share = np.divide(damping * r, outdeg, out=np.zeros(n), where=outdeg > 0)
        nxt = (1.0 - damping) / n + dense.T @ share
        change = np.abs(nxt - r).sum()
        r = nxt
        out.append(r.copy())
        if change < tol:
            break
    return out


def dijkstra(wadj: list, source: int) -> dict:
    dist = {source: 0.0}
    heap = [(0.0, source)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v, w in wadj[u]:
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def count_triangles(adj: list) -> int:
    """Enumerate ``u < v < w`` cliques; self-loops ignored."""
    nbrs = [set(a) for a in adj]
    total = 0
    for u in range(len(adj)):
        higher = sorted(v for v in nbrs[u] if v > u)
        for a, v in enumerate(higher):
            for w in higher[a + 1:]:
                if w in nbrs[v]:
                    total += 1
    return total


def component_minima(adj: list) -> np.ndarray:
    """Union-find labels; each node maps to the smallest id in its component."""
    n = len(adj)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u in range(n):
        for v in adj[u]:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    return np.array([find(x) for x in range(n)], dtype=np.int64)
