"""Degree ordering and sampling, structural helpers, tandem sort, timer."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .core import BOOL, SparseMatrix, SparseVector, binary_op
from .errors import LengthMismatch
from .graph import Graph, require


@dataclass(frozen=True)
class DegreeSample:
    mean: float
    median: float
    sample_size: int


def _dense_degree(G: Graph, by_row: bool) -> np.ndarray:
    name = "row_degree" if by_row else "col_degree"
    require(G, name)
    deg = getattr(G, name)
    return deg.to_dense(0).astype(np.int64)


def sort_by_degree(G: Graph, ascending: bool = True, by_row: bool = True) -> np.ndarray:
    """Permutation ``p`` with ``degree[p]`` monotone; ties keep node-id order."""
    deg = _dense_degree(G, by_row)
    key = deg if ascending else -deg
    return np.argsort(key, kind="stable").astype(np.int64)


def sample_degree(G: Graph, sample_size: Optional[int] = None, seed: int = 0,
                  by_row: bool = True) -> DegreeSample:
    """Mean and median degree over a uniform sample of nodes.

    With ``sample_size >= n`` every node is used and the values are exact.
    The median of an even-length sample is its lower middle element.
    """
    deg = _dense_degree(G, by_row)
    n = deg.size
    if n == 0:
        return DegreeSample(0.0, 0.0, 0)
    if sample_size is None:
        sample_size = min(n, 1024)
    if sample_size >= n:
        sample = deg
    else:
        rng = np.random.default_rng(seed)
        sample = deg[rng.choice(n, size=sample_size, replace=False)]
    s = np.sort(sample)
    return DegreeSample(float(s.mean()), float(s[(s.size - 1) // 2]), int(s.size))


def pattern(A):
    """Same structure as ``A`` with every value ``True``."""
    A._check_live()
    if isinstance(A, SparseVector):
        return SparseVector(A.n, BOOL, A.idx.copy(), np.ones(A.nvals, dtype=bool))
    return SparseMatrix(A.nrows, A.ncols, BOOL, A.row_ptr.copy(), A.col_idx.copy(),
                        np.ones(A.nvals, dtype=bool))


def is_all(A, B, cmp: Callable) -> bool:
    """Same structure and ``cmp(a, b)`` true on every aligned pair of entries."""
    if type(A) is not type(B) or A.shape != B.shape:
        return False
    if not np.array_equal(A.keys(), B.keys()):
        return False
    if A.nvals == 0:
        return True
    return bool(np.all(np.asarray(cmp(A.values, B.values), dtype=bool)))


def is_equal(A, B) -> bool:
    """Same dimensions, domain, structure and values."""
    if type(A) is not type(B) or A.shape != B.shape or A.domain is not B.domain:
        return False
    return is_all(A, B, binary_op("eq", A.domain))


def sort_arrays(k1, k2=None, k3=None):
    """Stable lexicographic sort of one to three integer arrays in tandem."""
    arrays = [np.asarray(k, dtype=np.int64) for k in (k1, k2, k3) if k is not None]
    if any(a.shape != arrays[0].shape for a in arrays):
        raise LengthMismatch("arrays to sort together must have equal length")
    order = np.lexsort(tuple(reversed(arrays)))
    out = tuple(a[order] for a in arrays)
    return out[0] if len(out) == 1 else out


def timer() -> float:
    """Monotonic seconds."""
    return time.perf_counter()


def tic() -> float:
    return time.perf_counter()


def toc(t0: float) -> float:
    return time.perf_counter() - t0
