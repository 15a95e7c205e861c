from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ..core import (UINT64, SparseVector, assign, binary_op, descriptor, ewise_add,
                    extract, mxv, semiring)
from ..graph import Graph, require_symmetric_structure

MIN = binary_op("min", UINT64)
MIN_SECOND = semiring("min_second", UINT64)


@dataclass
class ComponentResult:
    label: np.ndarray


def fastsv_iterates(G: Graph) -> Iterator[np.ndarray]:
    """Yield the parent vector after every FastSV round, ending at the fixpoint.

    Each round: stochastic hooking (every node's parent adopts the smallest
    grandparent seen among the node's neighbours), aggressive hooking,
    shortcutting, then a grandparent refresh.  Stops when the grandparent
    vector no longer changes.
    """
    require_symmetric_structure(G, "connected components")
    n = G.n
    ids = np.arange(n, dtype=np.int64)
    f = SparseVector(n, UINT64, ids, ids)
    gf = SparseVector(n, UINT64, ids, ids)
    mngf = SparseVector(n, UINT64, ids, ids)
    prev = gf.values.copy()
    accum_min = descriptor(accum=MIN)
    while True:
        # step 1: stochastic hooking
        nbr = SparseVector(n, UINT64)
        mxv(nbr, None, MIN_SECOND, G.A, gf)
        merged = SparseVector(n, UINT64)
        ewise_add(merged, None, MIN, mngf, nbr)
        mngf = merged
        parents = f.values.astype(np.int64)
        assign(f, accum_min, parents, None, mngf)
        # step 2: aggressive hooking; step 3: shortcutting
        hooked = SparseVector(n, UINT64)
        ewise_add(hooked, None, MIN, f, mngf)
        short = SparseVector(n, UINT64)
        ewise_add(short, None, MIN, hooked, gf)
        f = short
        # step 4: grandparents
        g = SparseVector(n, UINT64)
        extract(g, None, f, f.values.astype(np.int64))
        gf = g
        yield f.values.astype(np.int64)
        # step 5: stop once no grandparent changed
        if np.array_equal(gf.values, prev):
            return
        prev = gf.values.copy()


def connected_components_fastsv(G: Graph) -> ComponentResult:
    """Component labels; every node gets the smallest node id in its component."""
    label = np.arange(G.n, dtype=np.int64)
    for label in fastsv_iterates(G):
        pass
    return ComponentResult(label)
