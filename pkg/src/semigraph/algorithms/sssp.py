from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import (ALL, BOOL, FP64, SparseMatrix, SparseVector, apply, assign, binary_op, cast,
                    descriptor, ewise_add, ewise_mult, select, set_element, value_range,
                    vxm, semiring)
from ..errors import NonPositiveDelta, NonPositiveWeight, SourceOutOfRange
from ..graph import Graph

MIN_PLUS = semiring("min_plus", FP64)
MIN = binary_op("min", FP64)
FIRST = binary_op("first", FP64)
LESS = binary_op("lt", FP64)


@dataclass
class SsspResult:
    dist: SparseVector


def _weights(A: SparseMatrix) -> SparseMatrix:
    if A.domain is FP64:
        return A
    W = SparseMatrix(A.nrows, A.ncols, FP64)
    apply(W, None, cast(FP64), A)
    return W


def default_delta(G: Graph) -> float:
    """Half the largest edge weight (1.0 for an edgeless graph)."""
    if G.A.nvals == 0:
        return 1.0
    return float(np.max(G.A.values.astype(np.float64))) / 2.0


def sssp_delta_stepping(G: Graph, source: int, delta: Optional[float] = None) -> SsspResult:
    """Shortest-path distances by delta-stepping over the min-plus semiring.

    Edges are split into light (``0 < w <= delta``) and heavy (``w > delta``).
    Bucket ``i`` holds tentative distances in ``[i*delta, (i+1)*delta)``;
    light edges out of the bucket are relaxed until it stops refilling, then
    heavy edges out of every node that passed through it are relaxed once.
    Unreached nodes are absent from the result.
    """
    n = G.n
    if not 0 <= source < n:
        raise SourceOutOfRange(f"source {source} outside [0, {n})")
    if delta is None:
        delta = default_delta(G)
    if not delta > 0:
        raise NonPositiveDelta(f"delta must be positive, got {delta}")
    A = _weights(G.A)
    if A.nvals and not np.all(A.values > 0):
        raise NonPositiveWeight("delta-stepping needs strictly positive edge weights")

    light = SparseMatrix(n, n, FP64)
    select(light, None, value_range(0.0, delta), A)
    heavy = SparseMatrix(n, n, FP64)
    select(heavy, None, value_range(delta, None), A)

    t = SparseVector(n, FP64)
    assign(t, None, ALL, None, np.inf)
    set_element(t, 0.0, source)

    i = 0
    while True:
        lo = i * delta
        pending = SparseVector(n, FP64)
        select(pending, None, value_range(lo, np.inf, lo_inclusive=True, hi_inclusive=False), t)
        if pending.nvals == 0:
            break
        # skip empty buckets
        lowest = pending.values.min()
        i = max(i, int(np.floor(lowest / delta)))
        while i * delta > lowest:
            i -= 1
        lo = i * delta
        bucket = SparseVector(n, FP64)
        in_bucket = value_range(lo, (i + 1) * delta, lo_inclusive=True, hi_inclusive=False)
        select(bucket, None, in_bucket, t)
        settled = SparseVector(n, FP64)
        while bucket.nvals:
            frontier = SparseVector(n, FP64)
            ewise_mult(frontier, None, FIRST, t, bucket)
            req = SparseVector(n, FP64)
            vxm(req, None, MIN_PLUS, frontier, light)
            merged = SparseVector(n, FP64)
            ewise_add(merged, None, FIRST, settled, bucket)
            settled = merged
            # nodes whose distance improves and lands back in this bucket
            improved = SparseVector(n, BOOL)
            ewise_mult(improved, None, LESS, req, t)
            refill = SparseVector(n, FP64)
            select(refill, descriptor(improved), in_bucket, req)
            bucket = refill
            nt = SparseVector(n, FP64)
            ewise_add(nt, None, MIN, t, req)
            t = nt
        frontier = SparseVector(n, FP64)
        ewise_mult(frontier, None, FIRST, t, settled)
        req = SparseVector(n, FP64)
        vxm(req, None, MIN_PLUS, frontier, heavy)
        nt = SparseVector(n, FP64)
        ewise_add(nt, None, MIN, t, req)
        t = nt
        i += 1

    dist = SparseVector(n, FP64)
    select(dist, None, value_range(None, np.inf, hi_inclusive=False), t)
    return SsspResult(dist)
