from __future__ import annotations

import enum

import numpy as np


class ValueDomain(enum.Enum):
    """Value type carried by every container.  The enum value is the on-disk tag."""

    BOOL = 0
    INT64 = 1
    UINT64 = 2
    FP64 = 3

    @property
    def dtype(self) -> np.dtype:
        return _DTYPES[self]

    @property
    def is_integer(self) -> bool:
        return self in (ValueDomain.INT64, ValueDomain.UINT64)

    @classmethod
    def of(cls, dtype) -> "ValueDomain":
        dtype = np.dtype(dtype)
        if dtype.kind == "b":
            return cls.BOOL
        if dtype.kind == "i":
            return cls.INT64
        if dtype.kind == "u":
            return cls.UINT64
        if dtype.kind == "f":
            return cls.FP64
        raise TypeError(f"no value domain for dtype {dtype}")


_DTYPES = {
    ValueDomain.BOOL: np.dtype(np.bool_),
    ValueDomain.INT64: np.dtype(np.int64),
    ValueDomain.UINT64: np.dtype(np.uint64),
    ValueDomain.FP64: np.dtype(np.float64),
}

BOOL = ValueDomain.BOOL
INT64 = ValueDomain.INT64
UINT64 = ValueDomain.UINT64
FP64 = ValueDomain.FP64
