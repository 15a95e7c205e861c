"""The operation set: multiply, element-wise, extract/assign, apply/select,
reduce, transpose, plus the container methods (build, dup, tuples, elements).

Every operation that writes a container computes a result ``T`` on the full
index space and hands it to one shared mask/accumulator step:

* ``Z = T`` without an accumulator, otherwise ``Z = C (.) T`` on the union of
  the prior output ``C`` and ``T``;
* positions inside the mask take ``Z`` (absent in ``Z`` means deleted);
* positions outside the mask keep ``C`` (merge) or are deleted (replace).

Outputs are updated in place and returned.  Passing an input container as the
output raises :class:`AliasingError`.
"""

from __future__ import annotations

import os
from numbers import Number
from typing import Optional, Union

import numpy as np

from ..errors import (AliasingError, DimensionMismatch, DomainMismatch,
                      DuplicateEntry, IndexOutOfBounds, InvalidValue, NoValue)
from .containers import SparseMatrix, SparseVector
from .descriptor import NULL, Descriptor, MaskSpec
from .domain import ValueDomain
from .operators import BinaryOp, Monoid, SelectOp, Semiring, UnaryOp, binary_op

DEBUG = os.environ.get("SEMIGRAPH_DEBUG", "") not in ("", "0")

# upper bound on the number of products materialized per multiply block
CHUNK = 1 << 22

Container = Union[SparseMatrix, SparseVector]


class _All:
    def __repr__(self):
        return "ALL"


ALL = _All()

_EMPTY_KEYS = np.empty(0, dtype=np.int64)


# -- small helpers -----------------------------------------------------------------

def _live(*xs) -> None:
    for x in xs:
        x._check_live()


def _no_alias(out, *inputs) -> None:
    for x in inputs:
        if x is out:
            raise AliasingError("output container is also an input; use a separate output")


def _check_domain(expected: Optional[ValueDomain], actual: ValueDomain, what: str) -> None:
    if expected is not None and expected is not actual:
        raise DomainMismatch(f"{what}: expected {expected.name}, got {actual.name}")


def _isin_sorted(keys: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Membership of ``keys`` in the ascending array ``ref``."""
    if ref.size == 0:
        return np.zeros(keys.shape, dtype=bool)
    pos = np.searchsorted(ref, keys)
    pos[pos == ref.size] = 0
    return ref[pos] == keys


def _merge(k1, v1, k2, v2):
    """Union of two disjoint sorted key sets."""
    if k2.size == 0:
        return k1, v1
    if k1.size == 0:
        return k2, v2
    keys = np.concatenate([k1, k2])
    vals = np.concatenate([v1, v2])
    order = np.argsort(keys, kind="stable")
    return keys[order], vals[order]


def _segment_offsets(counts: np.ndarray) -> np.ndarray:
    """``[0..c0-1, 0..c1-1, ...]`` for the given segment lengths."""
    total = int(counts.sum())
    return np.arange(total, dtype=np.int64) - np.repeat(np.cumsum(counts) - counts, counts)


def _transposed(A: SparseMatrix) -> SparseMatrix:
    rows = A.row_indices()
    keys = A.col_idx * A.nrows + rows
    order = np.argsort(keys, kind="stable")
    return SparseMatrix.from_keys(A.ncols, A.nrows, A.domain, keys[order], A.values[order])


def _operand(A, transpose: bool):
    if transpose and isinstance(A, SparseMatrix):
        return _transposed(A)
    return A


def _as_op(op) -> BinaryOp:
    if isinstance(op, Monoid):
        return op.op
    if isinstance(op, Semiring):
        return op.add.op
    return op


def _indices(sel, n: int, what: str) -> np.ndarray:
    if sel is ALL:
        return np.arange(n, dtype=np.int64)
    idx = np.atleast_1d(np.asarray(sel, dtype=np.int64))
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise IndexOutOfBounds(f"{what} index out of range [0, {n})")
    return idx


# -- the shared mask / accumulator step ------------------------------------------------

def _mask_member_fn(mask: MaskSpec, out: Container):
    """Return ``member(keys) -> bool`` for the mask, or None when every position is in it."""
    if mask.source is None:
        return None
    m = mask.source
    _live(m)
    if m.shape != out.shape:
        raise DimensionMismatch(f"mask shape {m.shape} != output shape {out.shape}")
    mk = m.keys()
    if not mask.structural:
        mk = mk[m.values != 0]
    if mask.complement:
        return lambda keys: ~_isin_sorted(keys, mk)
    return lambda keys: _isin_sorted(keys, mk)


def _masked_write(out: Container, zk, zv, mask: MaskSpec, ck, cv) -> None:
    member = _mask_member_fn(mask, out)
    if member is None:
        keys, vals = zk, zv
    else:
        zin = member(zk)
        zk, zv = zk[zin], zv[zin]
        if mask.replace:
            keys, vals = zk, zv
        else:
            cout = ~member(ck)
            keys, vals = _merge(zk, zv, ck[cout], cv[cout])
    out._set_keys(keys, np.asarray(vals).astype(out.domain.dtype, copy=False))
    if DEBUG:
        out.validate()


def _accumulate(out: Container, accum: BinaryOp, ck, cv, tk, tv):
    both, ic, it = np.intersect1d(ck, tk, assume_unique=True, return_indices=True)
    only_c = np.ones(ck.size, dtype=bool)
    only_c[ic] = False
    only_t = np.ones(tk.size, dtype=bool)
    only_t[it] = False
    i, j = out.split_keys(both)
    vb = accum(cv[ic], tv[it], i, j, j)
    dt = out.domain.dtype
    keys = np.concatenate([ck[only_c], tk[only_t], both])
    vals = np.concatenate([cv[only_c].astype(dt, copy=False),
                           tv[only_t].astype(dt, copy=False),
                           vb.astype(dt, copy=False)])
    order = np.argsort(keys, kind="stable")
    return keys[order], vals[order]


def _finalize(out: Container, tk, tv, t_domain: ValueDomain, desc: Descriptor) -> Container:
    ck, cv = out.keys(), out.values
    accum = desc.accumulator
    if accum is None:
        _check_domain(out.domain, t_domain, "result domain vs output")
        zk, zv = tk, tv
    else:
        _check_domain(accum.domain_in1, out.domain, "accumulator input 1 vs output")
        _check_domain(accum.domain_in2, t_domain, "accumulator input 2 vs result")
        _check_domain(out.domain, accum.domain_out, "accumulator output vs output")
        zk, zv = _accumulate(out, accum, ck, cv, tk, np.asarray(tv))
    _masked_write(out, zk, zv, desc.mask, ck, cv)
    return out


# -- multiplication --------------------------------------------------------------------

def _spgemm(A: SparseMatrix, B: SparseMatrix, sr: Semiring, member):
    """Row-by-row product, products in ascending inner index within each output entry."""
    if A.nvals == 0 or B.nvals == 0:
        return _EMPTY_KEYS, np.empty(0, sr.domain.dtype)
    a_rows = A.row_indices()
    cnt = B.row_ptr[A.col_idx + 1] - B.row_ptr[A.col_idx]
    ent_cum = np.zeros(cnt.size + 1, dtype=np.int64)
    np.cumsum(cnt, out=ent_cum[1:])
    row_cum = ent_cum[A.row_ptr]
    out_k, out_v = [], []
    r0 = 0
    while r0 < A.nrows:
        r1 = int(np.searchsorted(row_cum, row_cum[r0] + CHUNK, side="right")) - 1
        r1 = min(max(r1, r0 + 1), A.nrows)
        e0, e1 = A.row_ptr[r0], A.row_ptr[r1]
        r0 = r1
        c = cnt[e0:e1]
        if not c.any():
            continue
        kk = A.col_idx[e0:e1]
        rows = np.repeat(a_rows[e0:e1], c)
        ks = np.repeat(kk, c)
        av = np.repeat(A.values[e0:e1], c)
        bp = np.repeat(B.row_ptr[kk], c) + _segment_offsets(c)
        js = B.col_idx[bp]
        bv = B.values[bp]
        keys = rows * B.ncols + js
        if member is not None:
            sel = member(keys)
            keys, rows, ks, js, av, bv = keys[sel], rows[sel], ks[sel], js[sel], av[sel], bv[sel]
            if keys.size == 0:
                continue
        prod = sr.mult(av, bv, rows, ks, js)
        order = np.argsort(keys, kind="stable")
        keys = keys[order]
        prod = prod[order]
        uk, starts = np.unique(keys, return_index=True)
        out_k.append(uk)
        out_v.append(sr.add.reduce_groups(prod, starts))
    if not out_k:
        return _EMPTY_KEYS, np.empty(0, sr.domain.dtype)
    return np.concatenate(out_k), np.concatenate(out_v)


def _row_matrix(u: SparseVector) -> SparseMatrix:
    return SparseMatrix(1, u.n, u.domain, np.array([0, u.nvals]), u.idx, u.values)


def _col_matrix(u: SparseVector) -> SparseMatrix:
    row_ptr = np.zeros(u.n + 1, dtype=np.int64)
    row_ptr[u.idx + 1] = 1
    np.cumsum(row_ptr, out=row_ptr)
    return SparseMatrix(u.n, 1, u.domain, row_ptr, np.zeros(u.nvals, np.int64), u.values)


def _prune(desc: Descriptor, out: Container):
    # entries outside the mask never reach the output, so they need not be computed
    return _mask_member_fn(desc.mask, out)


def mxm(C: SparseMatrix, desc: Optional[Descriptor], semiring: Semiring,
        A: SparseMatrix, B: SparseMatrix) -> SparseMatrix:
    """``C<M> (.)= A (+).(x) B``."""
    desc = desc or NULL
    _live(C, A, B)
    _no_alias(C, A, B)
    A = _operand(A, desc.transpose_in1)
    B = _operand(B, desc.transpose_in2)
    if A.ncols != B.nrows:
        raise DimensionMismatch(f"inner dimensions differ: {A.shape} x {B.shape}")
    if C.shape != (A.nrows, B.ncols):
        raise DimensionMismatch(f"output is {C.shape}, product is {(A.nrows, B.ncols)}")
    _check_domain(semiring.mult.domain_in1, A.domain, "mxm first input")
    _check_domain(semiring.mult.domain_in2, B.domain, "mxm second input")
    tk, tv = _spgemm(A, B, semiring, _prune(desc, C))
    return _finalize(C, tk, tv, semiring.domain, desc)


def vxm(w: SparseVector, desc: Optional[Descriptor], semiring: Semiring,
        u: SparseVector, A: SparseMatrix) -> SparseVector:
    """``w'<m> (.)= u' (+).(x) A``."""
    desc = desc or NULL
    _live(w, u, A)
    _no_alias(w, u, A)
    A = _operand(A, desc.transpose_in2)
    if u.n != A.nrows or w.n != A.ncols:
        raise DimensionMismatch(f"vxm: u({u.n}) x A{A.shape} -> w({w.n})")
    _check_domain(semiring.mult.domain_in1, u.domain, "vxm vector input")
    _check_domain(semiring.mult.domain_in2, A.domain, "vxm matrix input")
    tk, tv = _spgemm(_row_matrix(u), A, semiring, _prune(desc, w))
    return _finalize(w, tk, tv, semiring.domain, desc)


def mxv(w: SparseVector, desc: Optional[Descriptor], semiring: Semiring,
        A: SparseMatrix, u: SparseVector) -> SparseVector:
    """``w<m> (.)= A (+).(x) u``."""
    desc = desc or NULL
    _live(w, A, u)
    _no_alias(w, A, u)
    A = _operand(A, desc.transpose_in1)
    if u.n != A.ncols or w.n != A.nrows:
        raise DimensionMismatch(f"mxv: A{A.shape} x u({u.n}) -> w({w.n})")
    _check_domain(semiring.mult.domain_in1, A.domain, "mxv matrix input")
    _check_domain(semiring.mult.domain_in2, u.domain, "mxv vector input")
    tk, tv = _spgemm(A, _col_matrix(u), semiring, _prune(desc, w))
    return _finalize(w, tk, tv, semiring.domain, desc)


# -- element-wise ---------------------------------------------------------------------

def _ewise_inputs(out, desc, op, a, b):
    desc = desc or NULL
    _live(out, a, b)
    _no_alias(out, a, b)
    a = _operand(a, desc.transpose_in1)
    b = _operand(b, desc.transpose_in2)
    if type(a) is not type(b) or type(a) is not type(out):
        raise DimensionMismatch("element-wise operands must all be vectors or all matrices")
    if a.shape != b.shape or a.shape != out.shape:
        raise DimensionMismatch(f"shapes differ: {a.shape}, {b.shape} -> {out.shape}")
    op = _as_op(op)
    _check_domain(op.domain_in1, a.domain, "element-wise first input")
    _check_domain(op.domain_in2, b.domain, "element-wise second input")
    return desc, op, a, b


def ewise_add(out: Container, desc: Optional[Descriptor], op, a: Container, b: Container) -> Container:
    """``op`` on the union of structures; lone entries pass through unchanged."""
    desc, op, a, b = _ewise_inputs(out, desc, op, a, b)
    ak, bk = a.keys(), b.keys()
    both, ia, ib = np.intersect1d(ak, bk, assume_unique=True, return_indices=True)
    only_a = np.ones(ak.size, dtype=bool)
    only_a[ia] = False
    only_b = np.ones(bk.size, dtype=bool)
    only_b[ib] = False
    i, j = out.split_keys(both)
    vb = op(a.values[ia], b.values[ib], i, j, j)
    dt = op.domain_out.dtype
    keys = np.concatenate([ak[only_a], bk[only_b], both])
    vals = np.concatenate([a.values[only_a].astype(dt), b.values[only_b].astype(dt), vb])
    order = np.argsort(keys, kind="stable")
    return _finalize(out, keys[order], vals[order], op.domain_out, desc)


def ewise_mult(out: Container, desc: Optional[Descriptor], op, a: Container, b: Container) -> Container:
    """``op`` on the intersection of structures."""
    desc, op, a, b = _ewise_inputs(out, desc, op, a, b)
    both, ia, ib = np.intersect1d(a.keys(), b.keys(), assume_unique=True, return_indices=True)
    i, j = out.split_keys(both)
    vals = op(a.values[ia], b.values[ib], i, j, j)
    return _finalize(out, both, vals, op.domain_out, desc)


# -- extract / assign --------------------------------------------------------------------

def _gather_matrix(A: SparseMatrix, I: np.ndarray, J: Optional[np.ndarray]):
    """Entries of ``A(I, J)`` as (local row, local col, value); ``J=None`` means all columns."""
    rl = A.row_ptr[I + 1] - A.row_ptr[I]
    p = np.repeat(np.arange(I.size, dtype=np.int64), rl)
    ent = np.repeat(A.row_ptr[I], rl) + _segment_offsets(rl)
    cols = A.col_idx[ent]
    vals = A.values[ent]
    if J is None:
        return p, cols, vals
    perm = np.argsort(J, kind="stable")
    sj = J[perm]
    lo = np.searchsorted(sj, cols, side="left")
    m = np.searchsorted(sj, cols, side="right") - lo
    q = perm[np.repeat(lo, m) + _segment_offsets(m)]
    return np.repeat(p, m), q, np.repeat(vals, m)


def _gather_vector(u: SparseVector, I: np.ndarray):
    pos = np.searchsorted(u.idx, I)
    pos[pos == u.nvals] = 0
    present = u.idx[pos] == I if u.nvals else np.zeros(I.size, dtype=bool)
    return np.flatnonzero(present).astype(np.int64), u.values[pos[present]]


def extract(out: Container, desc: Optional[Descriptor], source: Container, i=ALL, j=ALL) -> Container:
    """``out<M> (.)= source(i, j)``.

    Forms: matrix from matrix, subvector from vector, and column vector from a
    matrix (``j`` a single column index; with ``transpose_in1`` it is a row).
    """
    desc = desc or NULL
    _live(out, source)
    _no_alias(out, source)
    source = _operand(source, desc.transpose_in1)
    if isinstance(source, SparseVector):
        if not isinstance(out, SparseVector):
            raise DimensionMismatch("subvector extract needs a vector output")
        I = _indices(i, source.n, "row")
        if out.n != I.size:
            raise DimensionMismatch(f"output length {out.n} != {I.size} indices")
        tk, tv = _gather_vector(source, I)
        return _finalize(out, tk, tv, source.domain, desc)

    I = _indices(i, source.nrows, "row")
    if isinstance(out, SparseVector):
        if j is ALL or np.ndim(j) != 0:
            raise DimensionMismatch("column extract needs a single column index")
        J = _indices([j], source.ncols, "column")
        if out.n != I.size:
            raise DimensionMismatch(f"output length {out.n} != {I.size} indices")
        p, _, vals = _gather_matrix(source, I, J)
        return _finalize(out, p, vals, source.domain, desc)

    J = None if j is ALL else _indices(j, source.ncols, "column")
    ncols = source.ncols if J is None else J.size
    if out.shape != (I.size, ncols):
        raise DimensionMismatch(f"output is {out.shape}, extract is {(I.size, ncols)}")
    p, q, vals = _gather_matrix(source, I, J)
    keys = p * ncols + q
    order = np.argsort(keys, kind="stable")
    return _finalize(out, keys[order], vals[order], source.domain, desc)


def assign(target: Container, desc: Optional[Descriptor], i, j, source) -> Container:
    """``target<M>(i, j) (.)= source``; ``source`` is a container or a scalar.

    For a vector target ``j`` is ignored (pass ``None``).  The mask has the
    target's full shape.  Positions outside the ``i x j`` region are never
    changed by the assignment itself, only by the mask's replace flag.
    Repeated indices are folded left to right with the accumulator, or the
    last one wins when there is none.
    """
    desc = desc or NULL
    _live(target)
    is_scalar = isinstance(source, (Number, np.generic))
    if not is_scalar:
        _live(source)
        _no_alias(target, source)
        source = _operand(source, desc.transpose_in1)

    if isinstance(target, SparseVector):
        I = _indices(i, target.n, "row")
        if is_scalar:
            p = np.arange(I.size, dtype=np.int64)
            vals = np.full(I.size, source)
        else:
            if not isinstance(source, SparseVector) or source.n != I.size:
                raise DimensionMismatch("assign source must be a vector of len(i)")
            p, vals = source.idx, source.values
        tkeys = I[p]
        in_region = (lambda keys: np.ones(keys.shape, dtype=bool)) if i is ALL else \
            (lambda keys: _isin_sorted(keys, np.unique(I)))
    else:
        I = _indices(i, target.nrows, "row")
        J = _indices(j, target.ncols, "column")
        if is_scalar:
            p = np.repeat(np.arange(I.size, dtype=np.int64), J.size)
            q = np.tile(np.arange(J.size, dtype=np.int64), I.size)
            vals = np.full(p.size, source)
        else:
            if not isinstance(source, SparseMatrix) or source.shape != (I.size, J.size):
                raise DimensionMismatch(f"assign source must be {(I.size, J.size)}")
            p, q, vals = source.row_indices(), source.col_idx, source.values
        tkeys = I[p] * target.ncols + J[q]
        if i is ALL and j is ALL:
            in_region = lambda keys: np.ones(keys.shape, dtype=bool)  # noqa: E731
        else:
            uI, uJ = np.unique(I), np.unique(J)

            def in_region(keys):
                r, c = target.split_keys(keys)
                return _isin_sorted(r, uI) & _isin_sorted(c, uJ)

    src_domain = target.domain if is_scalar else source.domain
    accum = desc.accumulator
    if accum is None:
        _check_domain(target.domain, src_domain, "assign source vs target")
    else:
        _check_domain(accum.domain_in1, target.domain, "accumulator input 1 vs target")
        _check_domain(accum.domain_in2, src_domain, "accumulator input 2 vs source")
        _check_domain(target.domain, accum.domain_out, "accumulator output vs target")

    dt = target.domain.dtype
    vals = np.asarray(vals).astype(dt, copy=False)
    ck, cv = target.keys(), target.values
    order = np.argsort(tkeys, kind="stable")
    tkeys, vals = tkeys[order], vals[order]
    uk, starts = np.unique(tkeys, return_index=True)
    outside = ~in_region(ck)
    if accum is None:
        tv = binary_op("second", target.domain).fold(vals, starts) if uk.size != tkeys.size else vals
        zk, zv = _merge(uk, tv, ck[outside], cv[outside])
    else:
        # prior value first, then contributions in order, folded per position
        has_c = _isin_sorted(ck, uk)
        keys = np.concatenate([ck[has_c], tkeys])
        prio = np.concatenate([np.zeros(has_c.sum(), np.int64),
                               np.arange(1, tkeys.size + 1, dtype=np.int64)])
        allv = np.concatenate([cv[has_c], vals])
        o = np.lexsort((prio, keys))
        keys, allv = keys[o], allv[o]
        fk, fstarts = np.unique(keys, return_index=True)
        fv = accum.fold(allv, fstarts)
        keep = ~has_c
        zk, zv = _merge(fk, fv.astype(dt, copy=False), ck[keep], cv[keep])
    _masked_write(target, zk, zv, desc.mask, ck, cv)
    return target


# -- apply / select / reduce / transpose -------------------------------------------------

def apply(out: Container, desc: Optional[Descriptor], f: UnaryOp, source: Container) -> Container:
    """``out<M> (.)= f(source, k)``; ``f`` sees each entry's value and indices."""
    desc = desc or NULL
    _live(out, source)
    _no_alias(out, source)
    source = _operand(source, desc.transpose_in1)
    if source.shape != out.shape:
        raise DimensionMismatch(f"apply: {source.shape} -> {out.shape}")
    _check_domain(f.domain_in, source.domain, "apply input")
    keys = source.keys()
    i, j = source.split_keys(keys)
    t_domain = f.out_domain(source.domain)
    vals = f(source.values, i, j).astype(t_domain.dtype, copy=False)
    return _finalize(out, keys, vals, t_domain, desc)


def select(out: Container, desc: Optional[Descriptor], pred: SelectOp, source: Container) -> Container:
    """``out<M> (.)= source<pred>``: keep entries where the predicate holds."""
    desc = desc or NULL
    _live(out, source)
    _no_alias(out, source)
    source = _operand(source, desc.transpose_in1)
    if source.shape != out.shape:
        raise DimensionMismatch(f"select: {source.shape} -> {out.shape}")
    keys = source.keys()
    i, j = source.split_keys(keys)
    keep = pred(source.values, i, j)
    return _finalize(out, keys[keep], source.values[keep], source.domain, desc)


def reduce(w: SparseVector, desc: Optional[Descriptor], monoid: Monoid, A: SparseMatrix) -> SparseVector:
    """Row-wise reduction ``w<m> (.)= [(+)_j A(:, j)]``; empty rows give no entry."""
    desc = desc or NULL
    _live(w, A)
    _no_alias(w, A)
    A = _operand(A, desc.transpose_in1)
    if w.n != A.nrows:
        raise DimensionMismatch(f"reduce: {A.nrows} rows -> vector of {w.n}")
    _check_domain(monoid.domain, A.domain, "reduce input")
    nonempty = np.flatnonzero(np.diff(A.row_ptr) > 0).astype(np.int64)
    vals = monoid.reduce_groups(A.values, A.row_ptr[nonempty])
    return _finalize(w, nonempty, vals, monoid.domain, desc)


def reduce_scalar(monoid: Monoid, source: Container, accum: Optional[BinaryOp] = None, prior=None):
    """Reduce every entry to one value; the monoid identity for an empty container."""
    _live(source)
    _check_domain(monoid.domain, source.domain, "reduce input")
    s = monoid.reduce(source.values)
    if accum is not None and prior is not None:
        s = accum(np.asarray([prior]), np.asarray([s]))[0]
    return s.item() if hasattr(s, "item") else s


def transpose(out: SparseMatrix, desc: Optional[Descriptor], A: SparseMatrix) -> SparseMatrix:
    """``C<M> (.)= A'``."""
    desc = desc or NULL
    _live(out, A)
    _no_alias(out, A)
    T = A if desc.transpose_in1 else _transposed(A)
    if out.shape != T.shape:
        raise DimensionMismatch(f"transpose: {T.shape} -> {out.shape}")
    return _finalize(out, T.keys(), T.values, A.domain, desc)


# -- container methods ------------------------------------------------------------------

def _build_keys(shape_keys, x, dup: Optional[BinaryOp], domain: ValueDomain):
    x = np.asarray(x).astype(domain.dtype, copy=False)
    order = np.argsort(shape_keys, kind="stable")
    keys, vals = shape_keys[order], x[order]
    uk, starts = np.unique(keys, return_index=True)
    if uk.size != keys.size:
        if dup is None:
            raise DuplicateEntry("duplicate indices and no dup operator given")
        vals = dup.fold(vals, starts).astype(domain.dtype, copy=False)
    return uk, vals


def _domain_of(x, domain):
    if domain is not None:
        return ValueDomain(domain)
    return ValueDomain.of(np.asarray(x).dtype)


def build_matrix(nrows: int, ncols: int, i, j, x, dup: Optional[BinaryOp] = None,
                 domain: Optional[ValueDomain] = None) -> SparseMatrix:
    """Matrix from ``(i, j, x)`` tuples; duplicates are folded with ``dup``.

    ``x`` may be a scalar, giving every entry that value.  The domain is taken
    from ``x`` unless given.
    """
    i = np.asarray(i, dtype=np.int64).ravel()
    j = np.asarray(j, dtype=np.int64).ravel()
    if np.ndim(x) == 0:
        x = np.full(i.size, x)
    domain = _domain_of(x, domain)
    x = np.asarray(x).ravel()
    if not (i.size == j.size == x.size):
        raise DimensionMismatch(f"tuple arrays differ in length: {i.size}, {j.size}, {x.size}")
    if i.size and (i.min() < 0 or i.max() >= nrows):
        raise IndexOutOfBounds(f"row index out of range [0, {nrows})")
    if j.size and (j.min() < 0 or j.max() >= ncols):
        raise IndexOutOfBounds(f"column index out of range [0, {ncols})")
    keys, vals = _build_keys(i * ncols + j, x, dup, domain)
    return SparseMatrix.from_keys(nrows, ncols, domain, keys, vals)


def build_vector(n: int, i, x, dup: Optional[BinaryOp] = None,
                 domain: Optional[ValueDomain] = None) -> SparseVector:
    i = np.asarray(i, dtype=np.int64).ravel()
    if np.ndim(x) == 0:
        x = np.full(i.size, x)
    domain = _domain_of(x, domain)
    x = np.asarray(x).ravel()
    if i.size != x.size:
        raise DimensionMismatch(f"tuple arrays differ in length: {i.size}, {x.size}")
    if i.size and (i.min() < 0 or i.max() >= n):
        raise IndexOutOfBounds(f"index out of range [0, {n})")
    keys, vals = _build_keys(i, x, dup, domain)
    return SparseVector(n, domain, keys, vals)


def dup(x: Container) -> Container:
    """Deep copy."""
    _live(x)
    if isinstance(x, SparseMatrix):
        return SparseMatrix(x.nrows, x.ncols, x.domain, x.row_ptr.copy(),
                            x.col_idx.copy(), x.values.copy())
    return SparseVector(x.n, x.domain, x.idx.copy(), x.values.copy())


def clear(x: Container) -> Container:
    _live(x)
    x._set_keys(_EMPTY_KEYS, np.empty(0, x.domain.dtype))
    return x


def nvals(x: Container) -> int:
    return x.nvals


def extract_tuples(x: Container):
    """``(i, j, x)`` for a matrix or ``(i, x)`` for a vector, ascending."""
    _live(x)
    if isinstance(x, SparseMatrix):
        return x.row_indices(), x.col_idx.copy(), x.values.copy()
    return x.idx.copy(), x.values.copy()


def _element_key(x: Container, i, j):
    if isinstance(x, SparseMatrix):
        if j is None:
            raise InvalidValue("matrix element needs a column index")
        if not (0 <= i < x.nrows and 0 <= j < x.ncols):
            raise IndexOutOfBounds(f"({i}, {j}) outside {x.shape}")
        return int(i) * x.ncols + int(j)
    if not 0 <= i < x.n:
        raise IndexOutOfBounds(f"{i} outside [0, {x.n})")
    return int(i)


def set_element(x: Container, value, i: int, j: Optional[int] = None) -> Container:
    _live(x)
    key = _element_key(x, i, j)
    keys, vals = x.keys(), x.values
    pos = int(np.searchsorted(keys, key))
    if pos < keys.size and keys[pos] == key:
        vals = vals.copy()
        vals[pos] = value
    else:
        keys = np.insert(keys, pos, key)
        vals = np.insert(vals, pos, np.asarray(value).astype(x.domain.dtype))
    x._set_keys(keys, vals)
    return x


def remove_element(x: Container, i: int, j: Optional[int] = None) -> Container:
    _live(x)
    key = _element_key(x, i, j)
    keys = x.keys()
    keep = keys != key
    x._set_keys(keys[keep], x.values[keep])
    return x


def extract_element(x: Container, i: int, j: Optional[int] = None):
    """Stored value at the position; raises :class:`NoValue` when absent."""
    _live(x)
    key = _element_key(x, i, j)
    keys = x.keys()
    pos = int(np.searchsorted(keys, key))
    if pos < keys.size and keys[pos] == key:
        return x.values[pos].item()
    raise NoValue(f"no entry at {(i, j) if j is not None else i}")
