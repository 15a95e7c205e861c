from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import (ALL, NAMED_SEMIRINGS, UINT64, SparseVector, assign, descriptor, mxv,
                    set_element, vxm)
from ..errors import SourceOutOfRange
from ..graph import Graph, require

ANY_SECONDI = NAMED_SEMIRINGS["any_secondi"]


@dataclass
class BfsResult:
    parent: SparseVector
    level: Optional[SparseVector] = None


def _start(G: Graph, source: int, want_level: bool):
    n = G.n
    if not 0 <= source < n:
        raise SourceOutOfRange(f"source {source} outside [0, {n})")
    parent = SparseVector(n, UINT64)
    set_element(parent, source, source)
    q = SparseVector(n, UINT64)
    set_element(q, source, source)
    level = None
    if want_level:
        level = SparseVector(n, UINT64)
        set_element(level, 0, source)
    return parent, q, level


def _record(parent, q, level, depth):
    # p<s(q)> = q
    assign(parent, descriptor(q, structural=True), ALL, None, q)
    if level is not None:
        assign(level, descriptor(q, structural=True), ALL, None, depth)


def bfs_push(G: Graph, source: int, compute_level: bool = False) -> BfsResult:
    """Parent BFS using push steps only: ``q<!s(p), r> = q any.secondi A``."""
    parent, q, level = _start(G, source, compute_level)
    unvisited = descriptor(parent, complement=True, structural=True, replace=True)
    for depth in range(1, G.n):
        nxt = SparseVector(G.n, UINT64)
        vxm(nxt, unvisited, ANY_SECONDI, q, G.A)
        q = nxt
        if q.nvals == 0:
            break
        _record(parent, q, level, depth)
    return BfsResult(parent, level)


def bfs_direction_optimizing(G: Graph, source: int, compute_level: bool = False,
                             push_divisor: int = 16, force: Optional[str] = None) -> BfsResult:
    """Parent BFS choosing push (``q' A``) or pull (``A' q``) per level.

    Push is used while the frontier is below ``n / push_divisor`` and has not
    shrunk since the previous level; pull otherwise.  ``force`` pins the
    direction to ``"push"`` or ``"pull"``.  Requires the cached transpose.
    """
    require(G, "AT")
    if force not in (None, "push", "pull"):
        raise ValueError(f"force must be 'push' or 'pull', not {force!r}")
    parent, q, level = _start(G, source, compute_level)
    n = G.n
    unvisited = descriptor(parent, complement=True, structural=True, replace=True)
    previous = 0
    for depth in range(1, n):
        size = q.nvals
        if force is None:
            push = size < n / push_divisor and size >= previous
        else:
            push = force == "push"
        previous = size
        nxt = SparseVector(n, UINT64)
        if push:
            vxm(nxt, unvisited, ANY_SECONDI, q, G.A)
        else:
            mxv(nxt, unvisited, ANY_SECONDI, G.AT, q)
        q = nxt
        if q.nvals == 0:
            break
        _record(parent, q, level, depth)
    return BfsResult(parent, level)


def parents_dense(result: BfsResult, n: int) -> np.ndarray:
    """Parent ids as a dense array, ``-1`` for unreached nodes."""
    out = np.full(n, -1, dtype=np.int64)
    out[result.parent.idx] = result.parent.values.astype(np.int64)
    return out
