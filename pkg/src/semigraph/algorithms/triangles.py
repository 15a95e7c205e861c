from __future__ import annotations

from typing import Optional

from ..core import (UINT64, SparseMatrix, descriptor, extract, monoid, mxm, reduce_scalar,
                    select, semiring, tril, triu)
from ..errors import PreconditionViolated
from ..graph import Graph, require, require_symmetric_structure
from ..util import sample_degree, sort_by_degree

PLUS_PAIR = semiring("plus_pair", UINT64)


def triangle_count(G: Graph, presort: Optional[bool] = None, seed: int = 0,
                   sample_size: Optional[int] = None) -> int:
    """Number of 3-cliques of an undirected graph without self-loops.

    The graph is relabeled by ascending degree first when the sampled mean
    degree exceeds four times the median; ``presort`` overrides that choice.
    Then ``C<s(L)> = L plus.pair U'`` and the count is the sum of ``C``.
    Requires the cached row degrees, a known symmetric pattern and
    ``ndiag == 0``.
    """
    require_symmetric_structure(G, "triangle counting")
    require(G, "ndiag", "row_degree")
    if G.ndiag != 0:
        raise PreconditionViolated(f"graph has {G.ndiag} self-loops")
    A = G.A
    n = G.n
    if presort is None:
        stats = sample_degree(G, sample_size, seed)
        presort = stats.mean > 4 * stats.median
    if presort:
        p = sort_by_degree(G, ascending=True)
        permuted = SparseMatrix(n, n, A.domain)
        extract(permuted, None, A, p, p)
        A = permuted
    L = SparseMatrix(n, n, A.domain)
    select(L, None, tril(), A)
    U = SparseMatrix(n, n, A.domain)
    select(U, None, triu(), A)
    C = SparseMatrix(n, n, UINT64)
    mxm(C, descriptor(L, structural=True, transpose_in2=True), PLUS_PAIR, L, U)
    return int(reduce_scalar(monoid("plus", UINT64), C))
