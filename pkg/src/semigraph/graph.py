"""Graph object: an adjacency matrix, its kind, and cached derived properties.

The object is deliberately open.  Any code may set ``G.AT`` or the degree
vectors; keeping them consistent with ``G.A`` is the caller's job, and
:func:`check_graph` verifies it.  Unknown caches are ``None`` (or
``BooleanProperty.UNKNOWN`` / ``-1``), never stale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import core
from .core import INT64, SparseMatrix, SparseVector
from .errors import (GraphBLASError, InvalidGraph, InvalidMatrix, MissingProperty,
                     PreconditionViolated, Status)


class Kind(enum.Enum):
    DIRECTED_ADJACENCY = "directed"
    UNDIRECTED_ADJACENCY = "undirected"


class BooleanProperty(enum.Enum):
    FALSE = 0
    TRUE = 1
    UNKNOWN = -1


DIRECTED = Kind.DIRECTED_ADJACENCY
UNDIRECTED = Kind.UNDIRECTED_ADJACENCY


@dataclass(eq=False)
class Graph:
    A: SparseMatrix
    kind: Kind
    AT: Optional[SparseMatrix] = None
    row_degree: Optional[SparseVector] = None
    col_degree: Optional[SparseVector] = None
    pattern_is_symmetric: BooleanProperty = BooleanProperty.UNKNOWN
    ndiag: int = -1

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def nvals(self) -> int:
        return self.A.nvals

    @property
    def is_symmetric_structure(self) -> bool:
        return self.kind is UNDIRECTED or self.pattern_is_symmetric is BooleanProperty.TRUE


def graph_new(M: SparseMatrix, kind: Kind = DIRECTED) -> Graph:
    """Create a graph that takes ownership of ``M``.

    The caller's handle is poisoned afterwards: any later use of ``M`` raises
    :class:`InvalidMatrix`.  Reach the matrix through ``G.A`` instead.
    """
    M.validate()
    if M.nrows != M.ncols:
        raise InvalidMatrix(f"adjacency matrix must be square, got {M.shape}")
    return Graph(M._release(), Kind(kind))


# -- properties ---------------------------------------------------------------------

def _degrees(A: SparseMatrix) -> SparseVector:
    counts = np.diff(A.row_ptr)
    nz = np.flatnonzero(counts).astype(np.int64)
    return SparseVector(A.nrows, INT64, nz, counts[nz])


def _col_degrees(A: SparseMatrix) -> SparseVector:
    counts = np.bincount(A.col_idx, minlength=A.ncols)
    nz = np.flatnonzero(counts).astype(np.int64)
    return SparseVector(A.ncols, INT64, nz, counts[nz])


def _transpose(A: SparseMatrix) -> SparseMatrix:
    return core.transpose(SparseMatrix(A.ncols, A.nrows, A.domain), None, A)


def property_at(G: Graph) -> Graph:
    if G.AT is None:
        AT = _transpose(G.A)
        # an undirected graph with symmetric values shares A's storage
        G.AT = G.A if G.kind is UNDIRECTED and _same_matrix(AT, G.A) else AT
    return G


def property_rowdegree(G: Graph) -> Graph:
    if G.row_degree is None:
        G.row_degree = _degrees(G.A)
    return G


def property_coldegree(G: Graph) -> Graph:
    if G.col_degree is None:
        if G.kind is UNDIRECTED:
            G.col_degree = G.row_degree if G.row_degree is not None else _degrees(G.A)
        else:
            G.col_degree = _col_degrees(G.A)
    return G


def _pattern_symmetric(A: SparseMatrix) -> bool:
    if A.nrows != A.ncols:
        return False
    rows = A.row_indices()
    tkeys = np.sort(A.col_idx * A.ncols + rows)
    return np.array_equal(tkeys, A.keys())


def property_symmetric_pattern(G: Graph) -> Graph:
    if G.pattern_is_symmetric is BooleanProperty.UNKNOWN:
        if G.kind is UNDIRECTED:
            G.pattern_is_symmetric = BooleanProperty.TRUE
        else:
            sym = _pattern_symmetric(G.A)
            G.pattern_is_symmetric = BooleanProperty.TRUE if sym else BooleanProperty.FALSE
    return G


def _count_diag(A: SparseMatrix) -> int:
    return int(np.count_nonzero(A.row_indices() == A.col_idx))


def property_ndiag(G: Graph) -> Graph:
    # counts stored diagonal entries, explicit zeros included
    if G.ndiag < 0:
        G.ndiag = _count_diag(G.A)
    return G


def delete_properties(G: Graph) -> Graph:
    G.AT = None
    G.row_degree = None
    G.col_degree = None
    G.pattern_is_symmetric = BooleanProperty.UNKNOWN
    G.ndiag = -1
    return G


def require(G: Graph, *names: str) -> None:
    """Raise :class:`MissingProperty` unless every named cache is present."""
    for name in names:
        value = getattr(G, name)
        missing = (value is None
                   or value is BooleanProperty.UNKNOWN
                   or (name == "ndiag" and value < 0))
        if missing:
            raise MissingProperty(f"graph property {name!r} is not cached; compute it first")


# -- checking and display -----------------------------------------------------------------

def require_symmetric_structure(G: Graph, what: str) -> None:
    """An undirected kind, or a directed graph whose cached pattern flag is TRUE."""
    if G.kind is UNDIRECTED:
        return
    if G.pattern_is_symmetric is BooleanProperty.UNKNOWN:
        raise MissingProperty(f"{what} needs 'pattern_is_symmetric' cached for a directed graph")
    if G.pattern_is_symmetric is BooleanProperty.FALSE:
        raise PreconditionViolated(f"{what} needs a symmetric adjacency pattern")


def _same_matrix(X: SparseMatrix, Y: SparseMatrix) -> bool:
    return (X.shape == Y.shape and X.domain is Y.domain
            and np.array_equal(X.row_ptr, Y.row_ptr)
            and np.array_equal(X.col_idx, Y.col_idx)
            and np.array_equal(X.values, Y.values))


def _same_vector(x: SparseVector, y: SparseVector) -> bool:
    return (x.n == y.n and np.array_equal(x.idx, y.idx)
            and np.array_equal(x.values.astype(np.int64), y.values.astype(np.int64)))


def _violation(G: Graph) -> Optional[str]:
    if not isinstance(G.A, SparseMatrix):
        return "A: not a sparse matrix"
    try:
        G.A.validate()
    except InvalidMatrix as exc:
        return f"A: {exc}"
    if G.A.nrows != G.A.ncols:
        return f"A: adjacency matrix is not square {G.A.shape}"
    if not isinstance(G.kind, Kind):
        return f"kind: unknown graph kind {G.kind!r}"
    if G.AT is not None:
        try:
            G.AT.validate()
        except InvalidMatrix as exc:
            return f"AT: {exc}"
        if not _same_matrix(G.AT, _transpose(G.A)):
            return "AT: cached transpose does not equal transpose(A)"
    if G.row_degree is not None and not _same_vector(G.row_degree, _degrees(G.A)):
        return "row_degree: cached row degrees do not match A"
    if G.col_degree is not None and not _same_vector(G.col_degree, _col_degrees(G.A)):
        return "col_degree: cached column degrees do not match A"
    sym = _pattern_symmetric(G.A)
    if G.kind is UNDIRECTED and not sym:
        return "kind: undirected graph has an unsymmetric pattern"
    if G.pattern_is_symmetric is BooleanProperty.TRUE and not sym:
        return "pattern_is_symmetric: marked TRUE but the pattern of A is unsymmetric"
    if G.pattern_is_symmetric is BooleanProperty.FALSE and sym:
        return "pattern_is_symmetric: marked FALSE but the pattern of A is symmetric"
    if G.ndiag >= 0 and G.ndiag != _count_diag(G.A):
        return f"ndiag: cached {G.ndiag} != {_count_diag(G.A)} diagonal entries"
    return None


def check_graph(G: Graph) -> Status:
    """Verify every cached property against ``G.A``.  Reports, never raises."""
    try:
        problem = _violation(G)
    except GraphBLASError as exc:
        return Status.from_exception(exc)
    if problem is None:
        return Status()
    return Status(InvalidGraph.code, problem)


def display_graph(G: Graph, verbosity: int = 1) -> str:
    A = G.A
    head = (f"Graph: {A.nrows} x {A.ncols} {A.domain.name} adjacency, "
            f"{A.nvals} entries, kind {G.kind.value}")
    if verbosity <= 0:
        return head
    lines = [head]
    lines.append(f"  AT:                   {'present' if G.AT is not None else 'absent'}")
    lines.append(f"  row_degree:           {'present' if G.row_degree is not None else 'absent'}")
    lines.append(f"  col_degree:           {'present' if G.col_degree is not None else 'absent'}")
    lines.append(f"  pattern_is_symmetric: {G.pattern_is_symmetric.name}")
    lines.append(f"  ndiag:                {G.ndiag if G.ndiag >= 0 else 'unknown'}")
    if verbosity >= 2 and A.nvals <= 100:
        rows = A.row_indices()
        for i, j, x in zip(rows.tolist(), A.col_idx.tolist(), A.values.tolist()):
            lines.append(f"    ({i}, {j})  {x}")
    return "\n".join(lines)
