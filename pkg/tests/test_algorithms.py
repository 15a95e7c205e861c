import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphs import complete, cycle, from_edges, graph, path, random_undirected, star
from semigraph import algorithms as alg
from semigraph.algorithms import basic
from semigraph.core import FP64
from semigraph.errors import (EmptyBatch, MissingProperty, NonPositiveDamping, NonPositiveDelta,
                              NonPositiveWeight, PreconditionViolated, SourceOutOfRange)
from semigraph.graph import UNDIRECTED, graph_new, property_at, property_ndiag, property_rowdegree


def as_dict(v):
    return dict(zip(v.idx.tolist(), v.values.tolist()))


# -- BFS -----------------------------------------------------------------------------

def test_bfs_star():
    assert as_dict(basic.bfs_push(star(3), 0).parent) == {0: 0, 1: 0, 2: 0, 3: 0}


def test_bfs_path_parents_and_levels():
    res = basic.bfs_direction_optimizing(path(3), 0, compute_level=True)
    assert as_dict(res.parent) == {0: 0, 1: 0, 2: 1}
    assert as_dict(res.level) == {0: 0, 1: 1, 2: 2}


def test_bfs_isolated_source():
    G = graph(2, [])
    assert as_dict(basic.bfs_push(G, 1).parent) == {1: 1}


def test_bfs_forced_directions_agree():
    G = property_at(star(5, UNDIRECTED))
    push = alg.bfs_direction_optimizing(G, 2, True, force="push")
    pull = alg.bfs_direction_optimizing(G, 2, True, force="pull")
    assert as_dict(push.level) == as_dict(pull.level) == {2: 0, 0: 1, 1: 2, 3: 2, 4: 2, 5: 2}


def test_bfs_needs_transpose_in_advanced_mode():
    with pytest.raises(MissingProperty):
        alg.bfs_direction_optimizing(path(3), 0)


def test_bfs_source_out_of_range():
    with pytest.raises(SourceOutOfRange):
        basic.bfs_push(path(3), 3)


def test_parents_dense_marks_unreached():
    assert alg.parents_dense(basic.bfs_push(path(3), 1), 3).tolist() == [-1, 1, 1]


# -- betweenness ------------------------------------------------------------------

def test_bc_path():
    res = basic.betweenness_centrality(path(3, UNDIRECTED), [0, 1, 2])
    assert res.centrality.tolist() == [0, 2, 0]


def test_bc_isolated_node():
    assert basic.betweenness_centrality(graph(1, []), [0]).centrality.tolist() == [0]


def test_bc_complete_graph():
    assert basic.betweenness_centrality(complete(3), [0, 1, 2]).centrality.tolist() == [0, 0, 0]


def test_bc_errors():
    with pytest.raises(EmptyBatch):
        basic.betweenness_centrality(path(3), [])
    with pytest.raises(SourceOutOfRange):
        basic.betweenness_centrality(path(3), [0, 7])


# -- PageRank ---------------------------------------------------------------------

def test_pagerank_cycles_are_uniform():
    assert np.allclose(basic.pagerank_gap(cycle(2), tol=1e-8).rank, [0.5, 0.5], atol=1e-12)
    assert np.allclose(basic.pagerank_gap(cycle(3), tol=1e-8).rank, [1 / 3] * 3, atol=1e-12)


def dense_pagerank(adj, damping, tol, itermax):
    n = adj.shape[0]
    out = adj.sum(axis=1)
    r = np.full(n, 1.0 / n)
    for _ in range(itermax):
        share = np.divide(r, out, out=np.zeros(n), where=out > 0)
        new = (1 - damping) / n + damping * adj.T.astype(float) @ share
        change = np.abs(new - r).sum()
        r = new
        if change < tol:
            break
    return r


def test_pagerank_dangling_path_matches_dense_recurrence():
    adj = np.zeros((3, 3), dtype=bool)
    adj[0, 1] = adj[1, 2] = True
    got = basic.pagerank_gap(path(3), tol=1e-12, itermax=50).rank
    assert np.allclose(got, dense_pagerank(adj, 0.85, 1e-12, 50), rtol=0, atol=1e-10)


def test_pagerank_rejects_nonpositive_damping():
    with pytest.raises(NonPositiveDamping):
        basic.pagerank_gap(cycle(2), damping=0.0)


# -- SSSP -------------------------------------------------------------------------

def test_sssp_path():
    G = graph(3, [(0, 1), (1, 2)], weights=[1.0, 1.0], domain=FP64)
    assert as_dict(alg.sssp_delta_stepping(G, 0, 2.0).dist) == {0: 0, 1: 1, 2: 2}


def test_sssp_diamond():
    G = graph(3, [(0, 1), (0, 2), (1, 2)], weights=[1.0, 4.0, 1.0], domain=FP64)
    assert as_dict(alg.sssp_delta_stepping(G, 0, 2.0).dist)[2] == 2


def test_sssp_unreached_nodes_absent():
    G = graph(3, [(0, 1)], weights=[3.0], domain=FP64)
    assert as_dict(alg.sssp_delta_stepping(G, 0, 1.0).dist) == {0: 0, 1: 3}


def test_sssp_errors():
    G = graph(2, [(0, 1)], weights=[1.0], domain=FP64)
    with pytest.raises(NonPositiveDelta):
        alg.sssp_delta_stepping(G, 0, 0.0)
    with pytest.raises(SourceOutOfRange):
        alg.sssp_delta_stepping(G, 2, 1.0)
    with pytest.raises(NonPositiveWeight):
        alg.sssp_delta_stepping(graph(2, [(0, 1)], weights=[-1.0], domain=FP64), 0, 1.0)


# -- triangles ----------------------------------------------------------------------

def test_triangle_counts():
    assert basic.triangle_count(complete(3)) == 1
    assert basic.triangle_count(complete(4)) == 4
    assert basic.triangle_count(cycle(4, UNDIRECTED)) == 0


def test_triangle_count_rejects_self_loops():
    G = graph_new(from_edges(2, [(0, 0), (0, 1)], symmetric=True), UNDIRECTED)
    with pytest.raises(PreconditionViolated):
        basic.triangle_count(G)


def test_triangle_count_advanced_needs_properties():
    with pytest.raises(MissingProperty):
        alg.triangle_count(complete(3))


def brute_triangles(G):
    adj = G.A.to_dense(False).astype(bool)
    n = G.n
    return sum(adj[a, b] and adj[b, c] and adj[a, c]
               for a in range(n) for b in range(a + 1, n) for c in range(b + 1, n))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_triangle_count_presort_invariance(seed):
    G = random_undirected(np.random.default_rng(seed), 30)
    property_rowdegree(G)
    property_ndiag(G)
    a = alg.triangle_count(G, presort=True)
    b = alg.triangle_count(G, presort=False)
    assert a == b == brute_triangles(G)


# -- connected components ---------------------------------------------------------

def test_components_two_edges():
    G = graph(4, [(0, 1), (2, 3)], UNDIRECTED)
    assert basic.connected_components_fastsv(G).label.tolist() == [0, 0, 2, 2]


def test_components_path():
    assert basic.connected_components_fastsv(path(5, UNDIRECTED)).label.tolist() == [0] * 5


def test_components_rejects_directed_asymmetric():
    with pytest.raises(PreconditionViolated):
        basic.connected_components_fastsv(path(3))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_components_labels_are_fixed_points(seed):
    G = random_undirected(np.random.default_rng(seed), 40)
    label = basic.connected_components_fastsv(G).label
    # every label is the minimum node id of its component, so it labels itself
    assert np.array_equal(label[label], label)
    assert np.all(label <= np.arange(G.n))
    rows, cols = G.A.row_indices(), G.A.col_idx
    assert np.array_equal(label[rows], label[cols])
