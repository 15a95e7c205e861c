"""Binary operators, monoids, semirings, and the unary/select operators.

Operators are vectorized: ``fn(x, y, i, k, j)`` receives equal-length value
arrays plus the row, inner and column index of every product.  Only the
positional operators look at the indices.  A domain of ``None`` on an input
means the operator ignores that input's values, so any domain is accepted.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any, Callable, Optional

import numpy as np

from .domain import BOOL, FP64, INT64, UINT64, ValueDomain


@dataclass(frozen=True)
class BinaryOp:
    name: str
    fn: Callable
    domain_in1: Optional[ValueDomain]
    domain_in2: Optional[ValueDomain]
    domain_out: ValueDomain
    positional: bool = False
    ufunc: Optional[np.ufunc] = None

    def __call__(self, x, y, i=None, k=None, j=None) -> np.ndarray:
        x = np.asarray(x)
        y = np.asarray(y)
        n = np.broadcast_shapes(x.shape, y.shape)
        if i is None:
            i = np.zeros(n, np.int64)
        if k is None:
            k = np.zeros(n, np.int64)
        if j is None:
            j = np.zeros(n, np.int64)
        with np.errstate(all="ignore"):
            out = self.fn(x, y, i, k, j)
        return np.asarray(out).astype(self.domain_out.dtype, copy=False)

    def fold(self, values: np.ndarray, starts: np.ndarray) -> np.ndarray:
        """Left-fold each segment ``values[starts[g]:starts[g+1]]``."""
        if values.size == 0:
            return values.astype(self.domain_out.dtype)
        if self.name in ("first", "any"):
            return values[starts].astype(self.domain_out.dtype, copy=False)
        if self.name == "second":
            ends = np.append(starts[1:], values.size) - 1
            return values[ends].astype(self.domain_out.dtype, copy=False)
        if self.ufunc is not None and not self.positional:
            with np.errstate(all="ignore"):
                out = self.ufunc.reduceat(values.astype(self.domain_out.dtype, copy=False), starts)
            return out.astype(self.domain_out.dtype, copy=False)
        ends = np.append(starts[1:], values.size)
        out = np.empty(starts.size, dtype=self.domain_out.dtype)
        for g, (s, e) in enumerate(zip(starts, ends)):
            acc = values[s]
            for v in values[s + 1:e]:
                acc = self(acc, v)[()]
            out[g] = acc
        return out


def _first(x, y, i, k, j):
    return x


def _second(x, y, i, k, j):
    return y


def _pair(x, y, i, k, j):
    return np.ones(np.broadcast_shapes(np.shape(x), np.shape(y)), dtype=np.int64)


def _div(x, y, i, k, j):
    if x.dtype.kind == "f" or y.dtype.kind == "f":
        return np.true_divide(x, y)
    if x.dtype.kind == "b":
        return x
    return np.floor_divide(x, y)


def _minus(x, y, i, k, j):
    if x.dtype.kind == "b":
        return np.logical_xor(x, y)
    return np.subtract(x, y)


def _ufn(u):
    return lambda x, y, i, k, j: u(x, y)


# name -> (fn, ufunc, ignores_x, ignores_y, boolean_result)
_BINARY_TABLE: dict[str, tuple] = {
    "first": (_first, None, False, True, False),
    "second": (_second, None, True, False, False),
    "any": (_first, None, False, False, False),
    "pair": (_pair, None, True, True, False),
    "plus": (_ufn(np.add), np.add, False, False, False),
    "minus": (_minus, None, False, False, False),
    "times": (_ufn(np.multiply), np.multiply, False, False, False),
    "div": (_div, None, False, False, False),
    "min": (_ufn(np.minimum), np.minimum, False, False, False),
    "max": (_ufn(np.maximum), np.maximum, False, False, False),
    "lor": (_ufn(np.logical_or), np.logical_or, False, False, True),
    "land": (_ufn(np.logical_and), np.logical_and, False, False, True),
    "lxor": (_ufn(np.logical_xor), np.logical_xor, False, False, True),
    "eq": (_ufn(np.equal), None, False, False, True),
    "ne": (_ufn(np.not_equal), None, False, False, True),
    "lt": (_ufn(np.less), None, False, False, True),
    "le": (_ufn(np.less_equal), None, False, False, True),
    "gt": (_ufn(np.greater), None, False, False, True),
    "ge": (_ufn(np.greater_equal), None, False, False, True),
}

# positional: name -> which index is returned
_POSITIONAL = {
    "firsti": lambda x, y, i, k, j: i,
    "firstj": lambda x, y, i, k, j: k,
    "secondi": lambda x, y, i, k, j: k,
    "secondj": lambda x, y, i, k, j: j,
}


@functools.lru_cache(maxsize=None)
def binary_op(name: str, domain: ValueDomain = FP64) -> BinaryOp:
    """Built-in operator ``name`` over ``domain``.

    For comparisons the inputs are in ``domain`` and the output is BOOL.  For
    positional operators ``domain`` is the output domain of the index.
    """
    domain = ValueDomain(domain)
    if name in _POSITIONAL:
        return BinaryOp(name, _POSITIONAL[name], None, None, domain, positional=True)
    try:
        fn, ufunc, ign_x, ign_y, boolean = _BINARY_TABLE[name]
    except KeyError:
        raise ValueError(f"unknown binary operator {name!r}") from None
    out = BOOL if boolean else domain
    return BinaryOp(
        name,
        fn,
        None if ign_x else domain,
        None if ign_y else domain,
        out,
        ufunc=ufunc if not boolean or name in ("lor", "land", "lxor") else None,
    )


@dataclass(frozen=True)
class Monoid:
    op: BinaryOp
    identity: Any

    @property
    def name(self) -> str:
        return self.op.name

    @property
    def domain(self) -> ValueDomain:
        return self.op.domain_out

    def reduce(self, values: np.ndarray):
        """Reduce all values to a scalar; the identity for an empty input."""
        if values.size == 0:
            return self.domain.dtype.type(self.identity)
        return self.op.fold(values, np.zeros(1, np.int64))[0]

    def reduce_groups(self, values: np.ndarray, starts: np.ndarray) -> np.ndarray:
        return self.op.fold(values, starts)


def _identity(name: str, domain: ValueDomain):
    if name in ("plus", "any", "lor", "lxor"):
        return domain.dtype.type(0)
    if name in ("times", "land"):
        return domain.dtype.type(1)
    if name == "min":
        if domain is FP64:
            return np.float64(np.inf)
        if domain is BOOL:
            return np.bool_(True)
        return np.iinfo(domain.dtype).max
    if name == "max":
        if domain is FP64:
            return np.float64(-np.inf)
        if domain is BOOL:
            return np.bool_(False)
        return np.iinfo(domain.dtype).min
    raise ValueError(f"{name!r} is not a monoid operator")


@functools.lru_cache(maxsize=None)
def monoid(name: str, domain: ValueDomain = FP64) -> Monoid:
    domain = ValueDomain(domain)
    ident = _identity(name, domain)
    op = binary_op(name, domain)
    if op.domain_out is not domain:
        op = BinaryOp(op.name, op.fn, domain, domain, domain, ufunc=op.ufunc)
    return Monoid(op, domain.dtype.type(ident))


@dataclass(frozen=True)
class Semiring:
    add: Monoid
    mult: BinaryOp
    name: str = ""

    @property
    def domain(self) -> ValueDomain:
        return self.add.domain


@functools.lru_cache(maxsize=None)
def semiring(name: str, domain: ValueDomain = FP64) -> Semiring:
    """Semiring from an ``"add_mult"`` name, e.g. ``semiring("min_plus", FP64)``."""
    domain = ValueDomain(domain)
    add_name, _, mult_name = name.partition("_")
    mult = binary_op(mult_name, domain)
    if mult.domain_out is not domain:
        raise ValueError(f"{mult_name} does not produce {domain.name}")
    return Semiring(monoid(add_name, domain), mult, name)


# the six semirings the graph algorithms are written against, at their native domains
NAMED_SEMIRINGS: dict[str, Semiring] = {
    "plus_times": semiring("plus_times", UINT64),
    "any_secondi": semiring("any_secondi", UINT64),
    "min_plus": semiring("min_plus", FP64),
    "plus_first": semiring("plus_first", UINT64),
    "plus_second": semiring("plus_second", UINT64),
    "plus_pair": semiring("plus_pair", UINT64),
}


# -- unary and select operators --------------------------------------------------

@dataclass(frozen=True)
class UnaryOp:
    """``fn(x, i, j, thunk)``; ``domain_out=None`` keeps the input domain."""

    name: str
    fn: Callable
    domain_in: Optional[ValueDomain] = None
    domain_out: Optional[ValueDomain] = None
    thunk: Any = None

    def out_domain(self, src: ValueDomain) -> ValueDomain:
        return self.domain_out if self.domain_out is not None else src

    def __call__(self, x, i, j) -> np.ndarray:
        with np.errstate(all="ignore"):
            return np.asarray(self.fn(x, i, j, self.thunk))


def unary_op(name: str, thunk=None, domain_out: Optional[ValueDomain] = None) -> UnaryOp:
    table = {
        "identity": lambda x, i, j, k: x,
        "abs": lambda x, i, j, k: x if x.dtype.kind in "bu" else np.abs(x),
        "ainv": lambda x, i, j, k: -x,
        "one": lambda x, i, j, k: np.ones_like(x),
        "rowindex": lambda x, i, j, k: i + (k or 0),
        "colindex": lambda x, i, j, k: j + (k or 0),
    }
    if name not in table:
        raise ValueError(f"unknown unary operator {name!r}")
    return UnaryOp(name, table[name], None, domain_out, thunk)


def cast(domain: ValueDomain) -> UnaryOp:
    return UnaryOp(f"cast_{domain.name}", lambda x, i, j, k: x, None, domain)


def bind_second(op: BinaryOp, scalar) -> UnaryOp:
    """``x -> op(x, scalar)``."""
    return UnaryOp(f"{op.name}_bound", lambda x, i, j, k: op(x, np.full(x.shape, k)),
                   op.domain_in1, op.domain_out, scalar)


def bind_first(op: BinaryOp, scalar) -> UnaryOp:
    """``y -> op(scalar, y)``."""
    return UnaryOp(f"bound_{op.name}", lambda x, i, j, k: op(np.full(x.shape, k), x),
                   op.domain_in2, op.domain_out, scalar)


@dataclass(frozen=True)
class SelectOp:
    """Predicate ``fn(x, i, j, thunk) -> bool array``."""

    name: str
    fn: Callable
    thunk: Any = None

    def __call__(self, x, i, j) -> np.ndarray:
        with np.errstate(all="ignore"):
            return np.asarray(self.fn(x, i, j, self.thunk), dtype=bool)


def tril(offset: int = 0) -> SelectOp:
    """Strictly lower triangle: keep ``i > j + offset``."""
    return SelectOp("tril", lambda x, i, j, k: i > j + k, offset)


def triu(offset: int = 0) -> SelectOp:
    """Strictly upper triangle: keep ``i < j - offset``."""
    return SelectOp("triu", lambda x, i, j, k: i < j - k, offset)


def diag() -> SelectOp:
    return SelectOp("diag", lambda x, i, j, k: i == j)


def offdiag() -> SelectOp:
    return SelectOp("offdiag", lambda x, i, j, k: i != j)


def nonzero() -> SelectOp:
    return SelectOp("nonzero", lambda x, i, j, k: x != 0)


def value_range(lo=None, hi=None, *, lo_inclusive=False, hi_inclusive=True) -> SelectOp:
    """Keep entries with ``lo < x <= hi`` (bounds and inclusivity configurable)."""

    def fn(x, i, j, k):
        keep = np.ones(x.shape, dtype=bool)
        if lo is not None:
            keep &= (x >= lo) if lo_inclusive else (x > lo)
        if hi is not None:
            keep &= (x <= hi) if hi_inclusive else (x < hi)
        return keep

    return SelectOp(f"range({lo},{hi})", fn, (lo, hi))


def value_compare(name: str, thunk) -> SelectOp:
    ops = {"gt": np.greater, "ge": np.greater_equal, "lt": np.less,
           "le": np.less_equal, "eq": np.equal, "ne": np.not_equal}
    u = ops[name]
    return SelectOp(f"value_{name}", lambda x, i, j, k: u(x, k), thunk)
