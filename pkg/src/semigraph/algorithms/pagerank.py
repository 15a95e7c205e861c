from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..core import (ALL, FP64, SparseVector, apply, assign, binary_op, bind_second, cast,
                    descriptor, ewise_mult, monoid, mxv, reduce_scalar, semiring, unary_op)
from ..errors import NonPositiveDamping
from ..graph import Graph, require

PLUS_SECOND = semiring("plus_second", FP64)
PLUS = binary_op("plus", FP64)
MINUS = binary_op("minus", FP64)
DIV = binary_op("div", FP64)


@dataclass
class PageRankResult:
    rank: np.ndarray
    iterations: int


def pagerank_iterates(G: Graph, damping: float = 0.85, tol: float = 1e-4,
                      itermax: int = 100) -> Iterator[tuple[np.ndarray, float]]:
    """Yield ``(rank, change)`` after every iteration of the GAP recurrence.

    Rank mass leaving a node with no out-edges is dropped, as in GAP.  Stops
    once the 1-norm of the change is below ``tol`` or after ``itermax``
    iterations.  Requires the cached transpose and row degrees.
    """
    require(G, "AT", "row_degree")
    if not damping > 0:
        raise NonPositiveDamping(f"damping must be positive, got {damping}")
    n = G.n
    if n == 0:
        return
    teleport = (1.0 - damping) / n
    r = SparseVector(n, FP64)
    assign(r, None, ALL, None, 1.0 / n)

    # d = rowdegree / damping
    d_out = SparseVector(n, FP64)
    apply(d_out, None, cast(FP64), G.row_degree)
    d = SparseVector(n, FP64)
    apply(d, None, bind_second(DIV, damping), d_out)

    t = SparseVector(n, FP64)
    for _ in range(itermax):
        t, r = r, t
        w = SparseVector(n, FP64)
        ewise_mult(w, None, DIV, t, d)
        assign(r, None, ALL, None, teleport)
        mxv(r, descriptor(accum=PLUS), PLUS_SECOND, G.AT, w)
        assign(t, descriptor(accum=MINUS), ALL, None, r)
        change = SparseVector(n, FP64)
        apply(change, None, unary_op("abs"), t)
        delta = reduce_scalar(monoid("plus", FP64), change)
        yield r.to_dense(0.0), delta
        if delta < tol:
            return


def pagerank_gap(G: Graph, damping: float = 0.85, tol: float = 1e-4,
                 itermax: int = 100) -> PageRankResult:
    rank, k = np.full(G.n, 1.0 / max(G.n, 1)), 0
    for k, (rank, _) in enumerate(pagerank_iterates(G, damping, tol, itermax), start=1):
        pass
    return PageRankResult(rank, k)
