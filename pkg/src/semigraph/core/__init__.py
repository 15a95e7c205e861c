"""Sparse containers and the semiring operation set."""

from .containers import SparseMatrix, SparseVector
from .descriptor import NULL, Descriptor, MaskSpec, descriptor
from .domain import BOOL, FP64, INT64, UINT64, ValueDomain
from .operations import (ALL, apply, assign, build_matrix, build_vector, clear, dup,
                         ewise_add, ewise_mult, extract, extract_element, extract_tuples,
                         mxm, mxv, nvals, reduce, reduce_scalar, remove_element, select,
                         set_element, transpose, vxm)
from .operators import (NAMED_SEMIRINGS, BinaryOp, Monoid, SelectOp, Semiring, UnaryOp,
                        bind_first, bind_second, binary_op, cast, diag, monoid,
                        nonzero, offdiag, semiring, tril, triu, unary_op, value_compare,
                        value_range)

__all__ = [name for name in dir() if not name.startswith("_")]
