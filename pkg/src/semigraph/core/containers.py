"""CSR matrices and sorted sparse vectors.

Both containers expose their entries as *linear keys* (``i * ncols + j`` for a
matrix, ``i`` for a vector) in ascending order.  The operation kernels work
on that flat view and rebuild the container from it, which keeps one
mask/accumulator path for vectors and matrices alike.
"""

from __future__ import annotations

import numpy as np

from ..errors import InvalidMatrix
from .domain import FP64, ValueDomain

_INDEX = np.int64


def _as_index(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=_INDEX)


class SparseMatrix:
    """Compressed sparse row matrix with sorted, duplicate-free rows."""

    __slots__ = ("nrows", "ncols", "domain", "row_ptr", "col_idx", "values", "_moved")

    def __init__(self, nrows: int, ncols: int, domain: ValueDomain = FP64,
                 row_ptr=None, col_idx=None, values=None):
        if nrows < 0 or ncols < 0:
            raise InvalidMatrix(f"negative dimensions {nrows} x {ncols}")
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        self.domain = ValueDomain(domain)
        if row_ptr is None:
            row_ptr = np.zeros(self.nrows + 1, dtype=_INDEX)
            col_idx = np.empty(0, dtype=_INDEX)
            values = np.empty(0, dtype=self.domain.dtype)
        self.row_ptr = _as_index(row_ptr)
        self.col_idx = _as_index(col_idx)
        self.values = np.ascontiguousarray(values, dtype=self.domain.dtype)
        self._moved = False

    # -- shape and flat view -------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def nvals(self) -> int:
        self._check_live()
        return int(self.col_idx.shape[0])

    def row_indices(self) -> np.ndarray:
        """Row index of every stored entry, in storage order."""
        return np.repeat(np.arange(self.nrows, dtype=_INDEX), np.diff(self.row_ptr))

    def keys(self) -> np.ndarray:
        self._check_live()
        return self.row_indices() * self.ncols + self.col_idx

    def split_keys(self, keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        if self.ncols == 0:
            return keys, keys
        return keys // self.ncols, keys % self.ncols

    @classmethod
    def from_keys(cls, nrows: int, ncols: int, domain: ValueDomain,
                  keys: np.ndarray, values: np.ndarray) -> "SparseMatrix":
        """Build from ascending, unique linear keys."""
        keys = _as_index(keys)
        if ncols:
            rows = keys // ncols
            cols = keys % ncols
        else:
            rows = cols = keys
        counts = np.bincount(rows, minlength=nrows) if keys.size else np.zeros(nrows, _INDEX)
        row_ptr = np.zeros(nrows + 1, dtype=_INDEX)
        np.cumsum(counts, out=row_ptr[1:])
        return cls(nrows, ncols, domain, row_ptr, cols, values)

    def _set_keys(self, keys: np.ndarray, values: np.ndarray) -> None:
        fresh = SparseMatrix.from_keys(self.nrows, self.ncols, self.domain, keys, values)
        self.row_ptr, self.col_idx, self.values = fresh.row_ptr, fresh.col_idx, fresh.values

    # -- housekeeping --------------------------------------------------------
    def _check_live(self) -> None:
        if self._moved:
            raise InvalidMatrix("matrix handle was moved and is no longer usable")

    def _release(self) -> "SparseMatrix":
        """Transfer ownership of the storage to a new handle; poison this one."""
        self._check_live()
        moved = SparseMatrix(self.nrows, self.ncols, self.domain,
                             self.row_ptr, self.col_idx, self.values)
        self.row_ptr = self.col_idx = self.values = None
        self._moved = True
        return moved

    def validate(self) -> None:
        self._check_live()
        rp, ci = self.row_ptr, self.col_idx
        if rp.shape != (self.nrows + 1,):
            raise InvalidMatrix("row_ptr must have nrows+1 entries")
        if rp[0] != 0:
            raise InvalidMatrix("row_ptr[0] must be 0")
        if np.any(np.diff(rp) < 0):
            raise InvalidMatrix("row_ptr is not nondecreasing")
        if rp[-1] != ci.shape[0] or self.values.shape != ci.shape:
            raise InvalidMatrix("row_ptr[nrows], col_idx and values disagree on nvals")
        if ci.size:
            if ci.min() < 0 or ci.max() >= self.ncols:
                raise InvalidMatrix("column index out of range")
            steps = np.diff(ci)
            row_starts = np.zeros(ci.size, dtype=bool)
            row_starts[rp[:-1][np.diff(rp) > 0]] = True
            if np.any((steps <= 0) & ~row_starts[1:]):
                raise InvalidMatrix("column indices within a row are not strictly increasing")
        if self.values.dtype != self.domain.dtype:
            raise InvalidMatrix("values dtype does not match domain")

    def to_dense(self, fill=0) -> np.ndarray:
        self._check_live()
        out = np.full(self.shape, fill, dtype=np.result_type(self.values.dtype, np.min_scalar_type(fill)))
        out[self.row_indices(), self.col_idx] = self.values
        return out

    def __repr__(self) -> str:
        if self._moved:
            return "SparseMatrix(<moved>)"
        return f"SparseMatrix({self.nrows} x {self.ncols}, {self.domain.name}, nvals={self.nvals})"


class SparseVector:
    """Sparse vector with strictly increasing indices."""

    __slots__ = ("n", "domain", "idx", "values")

    def __init__(self, n: int, domain: ValueDomain = FP64, idx=None, values=None):
        if n < 0:
            raise InvalidMatrix(f"negative vector length {n}")
        self.n = int(n)
        self.domain = ValueDomain(domain)
        if idx is None:
            idx = np.empty(0, dtype=_INDEX)
            values = np.empty(0, dtype=self.domain.dtype)
        self.idx = _as_index(idx)
        self.values = np.ascontiguousarray(values, dtype=self.domain.dtype)

    @property
    def shape(self) -> tuple[int]:
        return (self.n,)

    @property
    def nvals(self) -> int:
        return int(self.idx.shape[0])

    def keys(self) -> np.ndarray:
        return self.idx

    def split_keys(self, keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return keys, np.zeros_like(keys)

    @classmethod
    def from_keys(cls, n: int, domain: ValueDomain, keys, values) -> "SparseVector":
        return cls(n, domain, keys, values)

    def _set_keys(self, keys: np.ndarray, values: np.ndarray) -> None:
        self.idx = _as_index(keys)
        self.values = np.ascontiguousarray(values, dtype=self.domain.dtype)

    def _check_live(self) -> None:
        pass

    def validate(self) -> None:
        if self.values.shape != self.idx.shape:
            raise InvalidMatrix("idx and values lengths differ")
        if self.idx.size:
            if self.idx[0] < 0 or self.idx[-1] >= self.n:
                raise InvalidMatrix("vector index out of range")
            if np.any(np.diff(self.idx) <= 0):
                raise InvalidMatrix("vector indices are not strictly increasing")
        if self.values.dtype != self.domain.dtype:
            raise InvalidMatrix("values dtype does not match domain")

    def to_dense(self, fill=0) -> np.ndarray:
        out = np.full(self.n, fill, dtype=np.result_type(self.values.dtype, np.min_scalar_type(fill)))
        out[self.idx] = self.values
        return out

    def as_dict(self) -> dict:
        return dict(zip(self.idx.tolist(), self.values.tolist()))

    def __repr__(self) -> str:
        return f"SparseVector({self.n}, {self.domain.name}, nvals={self.nvals})"
