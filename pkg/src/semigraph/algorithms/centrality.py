from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import (ALL, BOOL, FP64, SparseMatrix, SparseVector, assign, binary_op,
                    build_matrix, descriptor, ewise_mult, monoid, mxm, reduce, semiring)
from ..errors import EmptyBatch, SourceOutOfRange
from ..graph import Graph, require

PLUS_FIRST = semiring("plus_first", FP64)
PLUS = binary_op("plus", FP64)
TIMES = binary_op("times", FP64)
DIV = binary_op("div", FP64)


@dataclass
class CentralityResult:
    centrality: np.ndarray


def betweenness_centrality(G: Graph, sources) -> CentralityResult:
    """Batched Brandes betweenness from the given source nodes.

    One row of the ``ns x n`` path-count matrix per source.  The forward
    phase records each BFS level's frontier pattern; the backward phase walks
    the levels in reverse, pulling dependencies through the transpose.
    Requires the cached transpose.
    """
    require(G, "AT")
    sources = np.atleast_1d(np.asarray(sources, dtype=np.int64))
    ns = sources.size
    n = G.n
    if ns == 0:
        raise EmptyBatch("betweenness needs at least one source")
    if sources.min() < 0 or sources.max() >= n:
        raise SourceOutOfRange(f"sources must lie in [0, {n})")
    A, AT = G.A, G.AT

    # P(b, sources[b]) = 1: one starting path per batch row
    P = build_matrix(ns, n, np.arange(ns), sources, 1.0, dup=PLUS, domain=FP64)
    F = SparseMatrix(ns, n, FP64)
    mxm(F, descriptor(P, complement=True, structural=True), PLUS_FIRST, P, A)

    levels: list[SparseMatrix] = []
    for _ in range(n + 1):
        S = SparseMatrix(ns, n, BOOL)
        assign(S, descriptor(F, structural=True), ALL, ALL, True)
        levels.append(S)
        assign(P, descriptor(accum=PLUS), ALL, ALL, F)
        nxt = SparseMatrix(ns, n, FP64)
        mxm(nxt, descriptor(P, complement=True, structural=True, replace=True), PLUS_FIRST, F, A)
        F = nxt
        if F.nvals == 0:
            break

    B = SparseMatrix(ns, n, FP64)
    assign(B, None, ALL, ALL, 1.0)
    for i in range(len(levels) - 1, 0, -1):
        W = SparseMatrix(ns, n, FP64)
        ewise_mult(W, descriptor(levels[i], structural=True, replace=True), DIV, B, P)
        pulled = SparseMatrix(ns, n, FP64)
        mxm(pulled, descriptor(levels[i - 1], structural=True, replace=True), PLUS_FIRST, W, AT)
        ewise_mult(B, descriptor(accum=PLUS), TIMES, pulled, P)

    # centrality(j) = sum_b (B(b, j) - 1)
    colsum = SparseVector(n, FP64)
    reduce(colsum, descriptor(transpose_in1=True), monoid("plus", FP64), B)
    centrality = np.full(n, -float(ns))
    centrality[colsum.idx] += colsum.values
    return CentralityResult(centrality)
