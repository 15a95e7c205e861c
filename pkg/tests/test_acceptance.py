"""One test per acceptance criterion, at the stated case counts and tolerances.

``conftest.py`` prints a PASS/FAIL line per test in the terminal summary.
"""

import io
import itertools
import subprocess
import sys
import time

import numpy as np
import pytest

import graphs
import reference as ref
from cases import DOMAINS, MASK_VARIANTS, OPERATIONS, random_matrix, random_vector, run_case
from semigraph import algorithms as alg
from semigraph import core
from semigraph.algorithms import basic
from semigraph.cli import runner as cli_main
from semigraph.cli import oracles
from semigraph.core import BOOL, FP64, INT64, UINT64
from semigraph.errors import MissingProperty
from semigraph.graph import (DIRECTED, UNDIRECTED, BooleanProperty, check_graph,
                             property_at, property_coldegree, property_ndiag,
                             property_rowdegree, property_symmetric_pattern)
from semigraph.io import bin_read, bin_write, mm_dumps, mm_loads
from semigraph.util import sort_by_degree


def _all_properties(G):
    for f in (property_at, property_rowdegree, property_coldegree,
              property_symmetric_pattern, property_ndiag):
        f(G)
    return G


def _level_array(res, n):
    level = np.full(n, -1, dtype=np.int64)
    level[res.level.idx] = res.level.values
    return level


def test_core_semantics():
    rng = np.random.default_rng(20240101)
    t0 = time.perf_counter()
    failures, count = [], 0
    for _ in range(2):
        for (kind, replace, accum), domain, op in itertools.product(MASK_VARIANTS, DOMAINS,
                                                                   OPERATIONS):
            label, problem = run_case(rng, op, domain, kind, replace, accum)
            count += 1
            if problem:
                failures.append(f"{label}: {problem}")
    elapsed = time.perf_counter() - t0
    assert count >= 1000
    assert not failures, failures[:5]
    assert elapsed < 30, f"{elapsed:.1f} s"


def test_semiring_registry():
    rng = np.random.default_rng(7)
    for name, sr in core.NAMED_SEMIRINGS.items():
        add = sr.add
        d = sr.domain
        if d is FP64:
            xs = rng.integers(-50, 50, 300) / 4.0
        else:
            xs = rng.integers(0, 1000, 300).astype(d.dtype)
        # identity: x (+) 0 = 0 (+) x = x
        ident = np.full(xs.size, add.identity, dtype=d.dtype)
        assert np.array_equal(add.op(xs, ident), xs), name
        if add.name != "any":
            assert np.array_equal(add.op(ident, xs), xs), name
        a, b, c = xs[:100], xs[100:200], xs[200:]
        assert np.array_equal(add.op(add.op(a, b), c), add.op(a, add.op(b, c))), name
        assert add.reduce(np.empty(0, d.dtype)) == add.identity
    assert core.NAMED_SEMIRINGS["min_plus"].add.identity == np.inf

    secondi = core.NAMED_SEMIRINGS["any_secondi"]
    for trial in range(100):
        m, n = int(rng.integers(1, 9)), int(rng.integers(1, 9))
        u = random_vector(rng, m, UINT64)
        A = random_matrix(rng, m, n, UINT64)
        w = core.SparseVector(n, UINT64)
        core.vxm(w, None, secondi, u, A)
        Ad, ud = ref.to_ref(A), ref.to_ref(u)
        reachable = {j for (k,) in ud.entries for (kk, j) in Ad.entries if kk == k}
        assert set(w.idx.tolist()) == reachable
        for j, k in zip(w.idx.tolist(), w.values.tolist()):
            assert (k,) in ud.entries and (k, j) in Ad.entries
            # ANY takes the first contribution in ascending inner index
            assert k == min(kk for (kk, jj) in Ad.entries if jj == j and (kk,) in ud.entries)
        # every registry semiring agrees with the reference on the same instance
        for name, sr in core.NAMED_SEMIRINGS.items():
            d = sr.domain
            uu = core.build_vector(m, u.idx, u.values, domain=d) if d is not UINT64 else u
            AA = core.build_matrix(m, n, A.row_indices(), A.col_idx, A.values, domain=d) \
                if d is not UINT64 else A
            out = core.SparseVector(n, d)
            core.vxm(out, None, sr, uu, AA)
            add_name, mult_name = name.split("_")
            want = ref.vxm(ref.Ref((n,), d), ref.to_ref(uu), ref.to_ref(AA), add_name,
                           mult_name, d, ref.RefMask(), None)
            assert ref.same(want, out) is None, (name, trial)


def _bfs_fixtures():
    yield graphs.path(6)
    yield graphs.star(5)
    yield graphs.star(5, UNDIRECTED)
    yield graphs.graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)])
    yield graphs.graph(2, [])


def test_bfs():
    rng = np.random.default_rng(11)
    t0 = time.perf_counter()
    fixtures = list(_bfs_fixtures()) + [graphs.random_digraph(rng, 128) for _ in range(200)]
    for G in fixtures:
        property_at(G)
        n = G.n
        src = int(rng.integers(n))
        adj = oracles.adjacency(G.A)
        push = alg.bfs_push(G, src, compute_level=True)
        dopt = alg.bfs_direction_optimizing(G, src, compute_level=True)
        for res in (push, dopt):
            assert oracles.check_bfs(adj, src, alg.parents_dense(res, n),
                                     _level_array(res, n)) is None
        assert np.array_equal(push.parent.idx, dopt.parent.idx)
        assert np.array_equal(_level_array(push, n), _level_array(dopt, n))
        for force in ("push", "pull"):
            forced = alg.bfs_direction_optimizing(G, src, compute_level=True, force=force)
            assert np.array_equal(_level_array(forced, n), _level_array(push, n))
    assert time.perf_counter() - t0 < 10


def test_bc():
    rng = np.random.default_rng(12)
    t0 = time.perf_counter()
    for trial in range(100):
        G = graphs.random_digraph(rng, 64) if trial % 2 else graphs.random_undirected(rng, 64)
        property_at(G)
        sources = np.arange(G.n)
        got = alg.betweenness_centrality(G, sources).centrality
        want = oracles.brandes(oracles.adjacency(G.A), sources)
        assert np.max(np.abs(got - want), initial=0.0) <= 1e-9
    G = property_at(graphs.path(3, UNDIRECTED))
    assert alg.betweenness_centrality(G, [0, 1, 2]).centrality.tolist() == [0.0, 2.0, 0.0]
    assert time.perf_counter() - t0 < 30


def test_pagerank():
    rng = np.random.default_rng(13)
    tol = 1e-4
    for trial in range(50):
        G = graphs.random_digraph(rng, 64)
        if trial % 2:
            # add a ring so no node dangles
            n = G.n
            e = set(zip(G.A.row_indices().tolist(), G.A.col_idx.tolist()))
            e |= {(i, (i + 1) % n) for i in range(n)}
            G = graphs.graph(n, sorted(e))
        property_at(G)
        property_rowdegree(G)
        mine = [r for r, _ in alg.pagerank_iterates(G, 0.85, tol, 100)]
        want = oracles.pagerank_iterates(G.A, 0.85, tol, 100)
        assert len(mine) == len(want)
        for r, w in zip(mine, want):
            assert np.max(np.abs(r - w)) <= 1e-10
        if G.row_degree.nvals == G.n:
            assert abs(mine[-1].sum() - 1.0) <= 10 * tol
    for n in (2, 3):
        G = graphs.cycle(n)
        r = basic.pagerank_gap(G, 0.85, 1e-8).rank
        assert np.all(r == r[0]) and abs(r[0] - 1.0 / n) <= 1e-15, r


def test_sssp():
    rng = np.random.default_rng(14)
    for trial in range(200):
        G = graphs.random_weighted(rng, 64, dyadic=trial % 2 == 0)
        src = int(rng.integers(G.n))
        want = oracles.dijkstra(oracles.adjacency(G.A, weighted=True), src)
        results = []
        for delta in (0.5, 2.0, 8.0):
            got = alg.sssp_delta_stepping(G, src, delta).dist.as_dict()
            assert got == want, (trial, delta)
            results.append(got)
        assert results[0] == results[1] == results[2]


def test_triangle_count():
    rng = np.random.default_rng(15)

    def count(G, presort):
        property_symmetric_pattern(G)
        property_ndiag(G)
        property_rowdegree(G)
        return alg.triangle_count(G, presort=presort)

    assert count(graphs.complete(3), None) == 1
    assert count(graphs.complete(4), None) == 4
    assert count(graphs.cycle(4, UNDIRECTED), None) == 0
    branches = set()
    for trial in range(100):
        G = graphs.skewed(rng) if trial % 10 == 0 else graphs.random_undirected(rng, 100)
        want = oracles.count_triangles(oracles.adjacency(G.A))
        sorted_count, plain = count(G, True), count(G, False)
        assert sorted_count == plain == count(G, None) == want
        stats = alg.basic.sample_degree(G)
        branches.add(stats.mean > 4 * stats.median)
        # relabel by degree and count again
        p = sort_by_degree(G)
        P = core.SparseMatrix(G.n, G.n, G.A.domain)
        core.extract(P, None, G.A, p, p)
        H = graphs.graph_new(P, UNDIRECTED)
        assert count(H, False) == want
    assert branches == {True, False}


def test_connected_components():
    rng = np.random.default_rng(16)
    for _ in range(200):
        G = graphs.random_undirected(rng, 128)
        want = oracles.component_minima(oracles.adjacency(G.A))
        rounds = list(alg.fastsv_iterates(G))
        label = rounds[-1]
        assert np.array_equal(label, want)
        prev = np.arange(G.n)
        for f in rounds:
            assert np.all(f <= prev)
            prev = f


def test_io_round_trip():
    rng = np.random.default_rng(17)
    for trial in range(100):
        d = DOMAINS[trial % 4]
        A = random_matrix(rng, int(rng.integers(1, 20)), int(rng.integers(1, 20)), d)
        if d is FP64:
            A.values[:] = rng.standard_normal(A.nvals) * 10.0 ** rng.integers(-5, 5)
        B = mm_loads(mm_dumps(A))
        assert B.domain is d and ref.same(ref.to_ref(A), B, rtol=0.0) is None
        buf = io.BytesIO()
        bin_write(A, buf)
        buf.seek(0)
        C = bin_read(buf)
        assert C.domain is d
        for name in ("row_ptr", "col_idx", "values"):
            assert getattr(C, name).tobytes() == getattr(A, name).tobytes()
    text = ("%%MatrixMarket matrix coordinate pattern symmetric\n"
            "3 3 3\n2 1\n3 1\n3 2\n")
    K3 = mm_loads(text)
    hand = graphs.from_edges(3, [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)])
    assert K3.nvals == 6 and ref.same(ref.to_ref(hand), K3) is None


def _corruptions():
    def at(G):
        property_at(G)
        G.AT = core.dup(G.A)

    def rowdeg(G):
        property_rowdegree(G)
        G.row_degree.values[0] += 1

    def coldeg(G):
        property_coldegree(G)
        G.col_degree = core.build_vector(G.n, [0], [99], domain=INT64)

    def sym_true(G):
        G.pattern_is_symmetric = BooleanProperty.TRUE

    def ndiag(G):
        G.ndiag = 5

    def csr(G):
        G.A.col_idx[[0, 1]] = G.A.col_idx[[1, 0]]

    return {"AT": at, "row_degree": rowdeg, "col_degree": coldeg,
            "pattern_is_symmetric": sym_true, "ndiag": ndiag, "A": csr}


def test_library_contracts():
    # an asymmetric graph with a row holding two entries, so every corruption is visible
    for name, corrupt in _corruptions().items():
        G = graphs.graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])
        assert check_graph(G).code == 0
        corrupt(G)
        status = check_graph(G)
        assert status.code < 0 and status.message.startswith(name), (name, status)
    G = graphs.graph(3, [(0, 1), (1, 0), (1, 2), (2, 1)], UNDIRECTED)
    G.A = graphs.from_edges(3, [(0, 1)])
    assert check_graph(G).code < 0

    bare = graphs.path(4)
    checks = [
        lambda G: alg.bfs_direction_optimizing(G, 0),
        lambda G: alg.betweenness_centrality(G, [0]),
        lambda G: alg.pagerank_gap(G),
        lambda G: alg.triangle_count(G),
        lambda G: alg.connected_components_fastsv(G),
    ]
    for f in checks:
        with pytest.raises(MissingProperty):
            f(bare)
    assert bare.AT is None and bare.row_degree is None

    rng = np.random.default_rng(18)
    for _ in range(20):
        U = graphs.random_undirected(rng, 48)
        D = graphs.random_digraph(rng, 48, loops=False)
        Ua, Da = _all_properties(graphs.graph_new(core.dup(U.A), UNDIRECTED)), \
            _all_properties(graphs.graph_new(core.dup(D.A), DIRECTED))
        src = 0
        assert np.array_equal(basic.bfs_direction_optimizing(D, src).parent.values,
                              alg.bfs_direction_optimizing(Da, src).parent.values)
        assert np.array_equal(basic.betweenness_centrality(D, [0]).centrality,
                              alg.betweenness_centrality(Da, [0]).centrality)
        assert np.array_equal(basic.pagerank_gap(D).rank, alg.pagerank_gap(Da).rank)
        assert basic.sssp_delta_stepping(D, src, 1.0).dist.as_dict() == \
            alg.sssp_delta_stepping(Da, src, 1.0).dist.as_dict()
        assert basic.triangle_count(U) == alg.triangle_count(Ua)
        assert np.array_equal(basic.connected_components_fastsv(U).label,
                              alg.connected_components_fastsv(Ua).label)


def test_cli(tmp_path, monkeypatch):
    k4 = tmp_path / "k4.mtx"
    k4.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n4 4 6\n"
                  "2 1\n3 1\n4 1\n3 2\n4 2\n4 3\n")
    loops = tmp_path / "loops.mtx"
    loops.write_text("%%MatrixMarket matrix coordinate pattern symmetric\n3 3 2\n1 1\n2 1\n")
    bad = tmp_path / "bad.mtx"
    bad.write_text("%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n")

    def run(*args):
        return subprocess.run([sys.executable, "-m", "semigraph", "run", *map(str, args)],
                              capture_output=True, text=True)

    ok = run("--algorithm", "tc", "--input", k4, "--undirected", "--verify")
    assert ok.returncode == cli_main.EXIT_OK
    assert "triangles: 4" in ok.stdout and "verify: PASS" in ok.stdout

    missing = run("--algorithm", "sssp", "--input", tmp_path / "missing.mtx")
    assert missing.returncode == cli_main.EXIT_LOAD and "missing.mtx" in missing.stderr
    assert run("--algorithm", "cc", "--input", bad).returncode == cli_main.EXIT_LOAD

    pre = run("--algorithm", "tc", "--input", loops)
    assert pre.returncode == cli_main.EXIT_PRECONDITION

    # a wrong answer must be caught by the oracle
    monkeypatch.setattr(cli_main.alg, "triangle_count", lambda G: 5)
    code = cli_main.main(["run", "--algorithm", "tc", "--input", str(k4), "--verify"])
    assert code == cli_main.EXIT_VERIFY
    monkeypatch.undo()
    assert len({cli_main.EXIT_LOAD, cli_main.EXIT_PRECONDITION, cli_main.EXIT_VERIFY}) == 3

    for algorithm in ("bfs", "bc", "pr", "sssp", "tc", "cc"):
        digests = []
        for rep in range(2):
            out = tmp_path / f"{algorithm}{rep}.jsonl"
            r = run("--algorithm", algorithm, "--input", k4, "--trials", 3,
                    "--sources", "seed:5", "--output", out)
            assert r.returncode == 0, r.stderr
            lines = out.read_text().splitlines()
            assert len(lines) == 3
            digests.append([line.split('"result_digest": ')[1].split(",")[0] for line in lines])
        assert digests[0] == digests[1]
