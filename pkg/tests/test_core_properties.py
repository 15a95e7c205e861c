"""Algebraic laws of the core operations, checked over hypothesis-drawn operands."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from cases import DOMAINS, MASK_KINDS, OPERATIONS, random_like, random_matrix, random_vector, run_case
from semigraph import core
from semigraph.core import BOOL, FP64, UINT64, SparseMatrix, SparseVector, descriptor

seeds = st.integers(0, 2**32 - 1)
domains = st.sampled_from(DOMAINS)
dims = st.integers(1, 8)


def keyset(x):
    return set(x.keys().tolist())


@settings(max_examples=300, deadline=None)
@given(seed=seeds, op=st.sampled_from(sorted(OPERATIONS)), domain=domains,
       mask=st.sampled_from(MASK_KINDS), replace=st.booleans(), accum=st.booleans())
def test_matches_reference(seed, op, domain, mask, replace, accum):
    label, problem = run_case(np.random.default_rng(seed), op, domain, mask, replace, accum)
    assert problem is None, f"{label}: {problem}"


@settings(max_examples=100, deadline=None)
@given(seed=seeds, domain=domains, m=dims, n=dims)
def test_ewise_structure_laws(seed, domain, m, n):
    rng = np.random.default_rng(seed)
    a, b = random_matrix(rng, m, n, domain), random_matrix(rng, m, n, domain)
    op = core.binary_op("first", domain)
    union, inter = SparseMatrix(m, n, domain), SparseMatrix(m, n, domain)
    core.ewise_add(union, None, op, a, b)
    core.ewise_mult(inter, None, op, a, b)
    assert keyset(union) == keyset(a) | keyset(b)
    assert keyset(inter) == keyset(a) & keyset(b)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, m=dims, k=dims, n=dims)
def test_mxm_structure_law(seed, m, k, n):
    rng = np.random.default_rng(seed)
    A, B = random_matrix(rng, m, k, FP64), random_matrix(rng, k, n, FP64)
    C = SparseMatrix(m, n, FP64)
    core.mxm(C, None, core.semiring("plus_pair", FP64), A, B)
    pa = np.zeros((m, k), dtype=bool)
    pa[A.row_indices(), A.col_idx] = True
    pb = np.zeros((k, n), dtype=bool)
    pb[B.row_indices(), B.col_idx] = True
    want = {i * n + j for i in range(m) for j in range(n) if np.any(pa[i] & pb[:, j])}
    assert keyset(C) == want


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=dims, replace=st.booleans(), structural=st.booleans())
def test_mask_laws(seed, n, replace, structural):
    rng = np.random.default_rng(seed)
    prior = random_vector(rng, n, FP64)
    t = random_vector(rng, n, FP64)
    m = random_vector(rng, n, FP64, density=0.5)
    m.values[rng.random(m.nvals) < 0.3] = 0.0
    inside = keyset(m) if structural else set(m.idx[m.values != 0].tolist())
    for complement in (False, True):
        w = core.dup(prior)
        core.apply(w, descriptor(m, complement=complement, structural=structural,
                                 replace=replace), core.unary_op("identity"), t)
        member = (lambda k: k not in inside) if complement else (lambda k: k in inside)
        got = dict(zip(w.idx.tolist(), w.values.tolist()))
        old = dict(zip(prior.idx.tolist(), prior.values.tolist()))
        new = dict(zip(t.idx.tolist(), t.values.tolist()))
        for k in range(n):
            if member(k):
                assert got.get(k) == new.get(k)
            elif replace:
                assert k not in got
            else:
                assert got.get(k) == old.get(k)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, n=dims)
def test_accumulator_law(seed, n):
    rng = np.random.default_rng(seed)
    prior, t = random_vector(rng, n, UINT64), random_vector(rng, n, UINT64)
    w = core.dup(prior)
    core.apply(w, descriptor(accum=core.binary_op("plus", UINT64)), core.unary_op("identity"), t)
    c = dict(zip(prior.idx.tolist(), prior.values.tolist()))
    tt = dict(zip(t.idx.tolist(), t.values.tolist()))
    got = dict(zip(w.idx.tolist(), w.values.tolist()))
    for k in set(c) | set(tt):
        assert got[k] == c.get(k, 0) + tt.get(k, 0)
    assert set(got) == set(c) | set(tt)


@settings(max_examples=100, deadline=None)
@given(seed=seeds, domain=domains, m=dims, n=dims)
def test_transpose_involution(seed, domain, m, n):
    A = random_matrix(np.random.default_rng(seed), m, n, domain)
    T, TT = SparseMatrix(n, m, domain), SparseMatrix(m, n, domain)
    core.transpose(T, None, A)
    core.transpose(TT, None, T)
    T.validate()
    assert ref.same(ref.to_ref(A), TT) is None


@settings(max_examples=100, deadline=None)
@given(seed=seeds, m=dims, n=dims)
def test_secondi_law(seed, m, n):
    rng = np.random.default_rng(seed)
    u, A = random_vector(rng, m, UINT64), random_matrix(rng, m, n, UINT64)
    w = SparseVector(n, UINT64)
    core.vxm(w, None, core.NAMED_SEMIRINGS["any_secondi"], u, A)
    present = set(zip(A.row_indices().tolist(), A.col_idx.tolist()))
    for j, k in zip(w.idx.tolist(), w.values.tolist()):
        assert k in set(u.idx.tolist()) and (k, j) in present


@settings(max_examples=100, deadline=None)
@given(domain=domains, name=st.sampled_from(["plus", "times", "min", "max", "any"]),
       value=st.integers(0, 100))
def test_monoid_identity_law(domain, name, value):
    if domain is BOOL:
        name = {"plus": "lor", "times": "land"}.get(name, name)
    mon = core.monoid(name, domain)
    assert mon.reduce(np.empty(0, domain.dtype)) == mon.identity
    x = np.array([value]).astype(domain.dtype)
    assert mon.reduce(x) == x[0]


@settings(max_examples=60, deadline=None)
@given(seed=seeds, domain=domains, m=dims, n=dims)
def test_outputs_stay_well_formed(seed, domain, m, n):
    rng = np.random.default_rng(seed)
    A = random_like(rng, (m, n), domain)
    out = SparseMatrix(m, n, domain)
    core.assign(out, None, rng.integers(0, m, m), rng.integers(0, n, n),
                random_matrix(rng, m, n, domain))
    out.validate()
    core.ewise_add(out, descriptor(A), core.binary_op("first", domain), core.dup(out), A)
    out.validate()
