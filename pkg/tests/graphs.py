"""Random and named graphs for the algorithm tests."""

from __future__ import annotations

import numpy as np

from semigraph import core
from semigraph.core import BOOL, FP64, SparseMatrix
from semigraph.graph import DIRECTED, UNDIRECTED, Graph, graph_new


def from_edges(n: int, edges, weights=None, domain=BOOL, symmetric=False) -> SparseMatrix:
    edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    i, j = edges[:, 0], edges[:, 1]
    x = np.ones(i.size, dtype=bool) if weights is None else np.asarray(weights)
    if symmetric:
        off = i != j
        i, j, x = np.concatenate([i, j[off]]), np.concatenate([j, i[off]]), np.concatenate([x, x[off]])
    if weights is not None and domain is BOOL:
        domain = FP64
    return core.build_matrix(n, n, i, j, x, dup=core.binary_op("first", domain), domain=domain)


def graph(n, edges, kind=DIRECTED, weights=None, domain=BOOL) -> Graph:
    return graph_new(from_edges(n, edges, weights, domain, symmetric=kind is UNDIRECTED), kind)


def path(n, kind=DIRECTED) -> Graph:
    return graph(n, [(i, i + 1) for i in range(n - 1)], kind)


def star(leaves, kind=DIRECTED) -> Graph:
    return graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], kind)


def cycle(n, kind=DIRECTED) -> Graph:
    return graph(n, [(i, (i + 1) % n) for i in range(n)], kind)


def complete(n) -> Graph:
    return graph(n, [(i, j) for i in range(n) for j in range(i)], UNDIRECTED)


def random_edges(rng, n, avg_degree, loops=False):
    m = rng.poisson(avg_degree * n) if n else 0
    i = rng.integers(0, max(n, 1), m)
    j = rng.integers(0, max(n, 1), m)
    keep = np.ones(m, dtype=bool) if loops else i != j
    pairs = np.unique(np.stack([i[keep], j[keep]], axis=1), axis=0)
    return pairs


def random_digraph(rng, max_n, loops=True) -> Graph:
    n = int(rng.integers(1, max_n + 1))
    avg = float(rng.choice([0.5, 1.0, 2.0, 4.0]))
    return graph(n, random_edges(rng, n, avg, loops), DIRECTED)


def random_undirected(rng, max_n, loops=False) -> Graph:
    n = int(rng.integers(1, max_n + 1))
    avg = float(rng.choice([0.5, 1.0, 2.0, 4.0, 8.0]))
    e = random_edges(rng, n, avg / 2, loops)
    return graph(n, e, UNDIRECTED)


def skewed(rng, core_size=20, pendants_per_node=3) -> Graph:
    """A clique with pendant leaves: sampled mean degree far above the median."""
    edges = [(i, j) for i in range(core_size) for j in range(i)]
    n = core_size
    for c in range(core_size):
        for _ in range(pendants_per_node):
            edges.append((n, c))
            n += 1
    perm = rng.permutation(n)
    return graph(n, [(perm[a], perm[b]) for a, b in edges], UNDIRECTED)


def random_weighted(rng, max_n, dyadic: bool) -> Graph:
    n = int(rng.integers(1, max_n + 1))
    e = random_edges(rng, n, float(rng.choice([1.0, 2.0, 4.0])))
    if dyadic:
        w = rng.integers(1, 81, len(e)) / 8.0
    else:
        w = (1.0 - rng.random(len(e))) * 10.0
    return graph(n, e, DIRECTED, weights=w, domain=FP64)
