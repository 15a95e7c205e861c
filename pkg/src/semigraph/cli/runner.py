"""``semigraph run``: load a graph, time an algorithm over several trials, verify.

Exit codes: 0 success, 2 usage error (argparse), 3 the input could not be
loaded, 4 an algorithm precondition failed, 5 verification failed.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .. import algorithms as alg
from ..errors import GraphBLASError
from ..graph import (DIRECTED, UNDIRECTED, Graph, check_graph, graph_new, property_at,
                     property_ndiag, property_rowdegree, property_symmetric_pattern)
from ..io import read_matrix
from ..util import tic, toc
from . import oracles
from .report import Report, TrialRecord, emit_report, result_digest

log = logging.getLogger("semigraph.cli")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_LOAD = 3
EXIT_PRECONDITION = 4
EXIT_VERIFY = 5

ALGORITHMS = ("bfs", "bc", "pr", "sssp", "tc", "cc")

# which optional flags each algorithm reads; anything else given is warned about
RELEVANT = {
    "bfs": {"sources"},
    "bc": {"sources", "batch"},
    "pr": {"damping", "tol", "itermax"},
    "sssp": {"sources", "delta"},
    "tc": set(),
    "cc": set(),
}
TUNABLES = ("sources", "batch", "delta", "damping", "tol", "itermax")


class LoadFailure(Exception):
    pass


class VerifyFailure(Exception):
    pass


@dataclass
class RunConfig:
    algorithm: str
    input_path: str
    input_format: Optional[str] = None
    trials: int = 1
    sources: Optional[list] = None
    source_seed: int = 0
    batch: int = 4
    delta: Optional[float] = None
    damping: float = 0.85
    tol: float = 1e-4
    itermax: int = 100
    verify: bool = False
    threads: int = 1
    output_path: Optional[str] = None
    undirected: Optional[bool] = None
    given: set = field(default_factory=set)

    @property
    def kind(self):
        undirected = self.undirected
        if undirected is None:
            undirected = self.algorithm in ("tc", "cc")
        return UNDIRECTED if undirected else DIRECTED


def _parse_sources(text: str):
    """``"0,4,7"`` is an explicit list; ``"seed:N"`` draws per-trial sources."""
    if text.startswith("seed:"):
        return None, int(text[5:])
    return [int(s) for s in text.split(",") if s.strip()], 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semigraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one algorithm on one graph")
    r.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    r.add_argument("--input", required=True, dest="input_path")
    r.add_argument("--format", dest="input_format", choices=("mm", "bin"))
    r.add_argument("--trials", type=int, default=1)
    src = r.add_mutually_exclusive_group()
    src.add_argument("--source", type=int, help="single source node")
    src.add_argument("--sources", help="comma list of nodes, or seed:N for seeded draws")
    r.add_argument("--batch", type=int, help="sources per betweenness trial when drawn")
    r.add_argument("--delta", type=float)
    r.add_argument("--damping", type=float)
    r.add_argument("--tol", type=float)
    r.add_argument("--itermax", type=int)
    r.add_argument("--verify", action="store_true")
    r.add_argument("--threads", type=int, default=1, help="accepted; execution is single-threaded")
    r.add_argument("--output", dest="output_path")
    kind = r.add_mutually_exclusive_group()
    kind.add_argument("--directed", dest="undirected", action="store_false", default=None)
    kind.add_argument("--undirected", dest="undirected", action="store_true")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.algorithm, ns.input_path, ns.input_format, ns.trials,
                    verify=ns.verify, threads=ns.threads, output_path=ns.output_path,
                    undirected=ns.undirected)
    if ns.source is not None:
        cfg.sources = [ns.source]
        cfg.given.add("sources")
    elif ns.sources is not None:
        cfg.sources, cfg.source_seed = _parse_sources(ns.sources)
        cfg.given.add("sources")
    for name in ("batch", "delta", "damping", "tol", "itermax"):
        value = getattr(ns, name)
        if value is not None:
            setattr(cfg, name, value)
            cfg.given.add(name)
    return cfg


# -- pieces of a run ----------------------------------------------------------------

def load_graph(cfg: RunConfig) -> Graph:
    try:
        A = read_matrix(cfg.input_path, cfg.input_format)
        G = graph_new(A, cfg.kind)
    except (GraphBLASError, OSError, UnicodeDecodeError) as exc:
        raise LoadFailure(f"cannot load {cfg.input_path}: {exc}") from exc
    status = check_graph(G)
    if status.is_error:
        raise LoadFailure(f"cannot load {cfg.input_path}: {status.message}")
    return G


def setup_properties(G: Graph, algorithm: str) -> None:
    if algorithm in ("bfs", "bc", "pr"):
        property_at(G)
    if algorithm in ("pr", "tc"):
        property_rowdegree(G)
    if algorithm in ("tc", "cc"):
        property_symmetric_pattern(G)
    if algorithm == "tc":
        property_ndiag(G)


def trial_sources(cfg: RunConfig, G: Graph) -> list:
    """Sources for each trial: one node for BFS/SSSP, a batch for BC."""
    n = G.n
    if cfg.sources is not None:
        if cfg.algorithm == "bc":
            return [np.array(cfg.sources)] * cfg.trials
        return [cfg.sources[t % len(cfg.sources)] for t in range(cfg.trials)]
    rng = np.random.default_rng(cfg.source_seed)
    # prefer nodes with out-edges, as GAP does
    pool = np.flatnonzero(np.diff(G.A.row_ptr))
    if pool.size == 0:
        pool = np.arange(n)
    if cfg.algorithm == "bc":
        k = min(cfg.batch, pool.size)
        return [np.sort(rng.choice(pool, size=k, replace=False)) for _ in range(cfg.trials)]
    return [int(rng.choice(pool)) for _ in range(cfg.trials)]


def execute(cfg: RunConfig, G: Graph, source):
    """Run once; return (raw result, canonical tuples, summary lines)."""
    a = cfg.algorithm
    if a == "bfs":
        res = alg.bfs_direction_optimizing(G, source, compute_level=True)
        parent = alg.parents_dense(res, G.n)
        level = np.full(G.n, -1, dtype=np.int64)
        level[res.level.idx] = res.level.values.astype(np.int64)
        tuples = [(i, int(parent[i]), int(level[i])) for i in np.flatnonzero(parent >= 0)]
        return (parent, level), tuples, {"reached": len(tuples), "depth": int(level.max())}
    if a == "bc":
        c = alg.betweenness_centrality(G, source).centrality
        return c, list(enumerate(c.tolist())), {"max centrality": float(c.max(initial=0.0))}
    if a == "pr":
        res = alg.pagerank_gap(G, cfg.damping, cfg.tol, cfg.itermax)
        return res, list(enumerate(res.rank.tolist())), {"iterations": res.iterations,
                                                         "rank sum": float(res.rank.sum())}
    if a == "sssp":
        d = alg.sssp_delta_stepping(G, source, cfg.delta).dist
        dist = d.as_dict()
        far = max(dist.values()) if dist else 0.0
        return dist, sorted(dist.items()), {"reached": len(dist), "max distance": far}
    if a == "tc":
        count = alg.triangle_count(G)
        return count, [(count,)], {"triangles": count}
    label = alg.connected_components_fastsv(G).label
    return label, list(enumerate(label.tolist())), {"components": int(np.unique(label).size)}


def verify(cfg: RunConfig, G: Graph, source, result) -> Optional[str]:
    """First mismatch against the reference implementation, or ``None``."""
    a = cfg.algorithm
    if a == "bfs":
        parent, level = result
        return oracles.check_bfs(oracles.adjacency(G.A), source, parent, level)
    if a == "bc":
        want = oracles.brandes(oracles.adjacency(G.A), source)
        bad = np.flatnonzero(~np.isclose(result, want, rtol=1e-9, atol=1e-9))
        return None if bad.size == 0 else f"node {bad[0]}: {result[bad[0]]!r} vs {want[bad[0]]!r}"
    if a == "pr":
        want = oracles.pagerank_iterates(G.A, cfg.damping, cfg.tol, cfg.itermax)
        if len(want) != result.iterations:
            return f"{result.iterations} iterations, oracle took {len(want)}"
        final = want[-1] if want else result.rank
        bad = np.flatnonzero(np.abs(result.rank - final) > 1e-9)
        return None if bad.size == 0 else f"node {bad[0]}: {result.rank[bad[0]]!r} vs {final[bad[0]]!r}"
    if a == "sssp":
        want = oracles.dijkstra(oracles.adjacency(G.A, weighted=True), source)
        if set(want) != set(result):
            diff = sorted(set(want) ^ set(result))
            return f"node {diff[0]}: reachability differs"
        for v in sorted(want):
            if not np.isclose(result[v], want[v], rtol=1e-12, atol=0.0):
                return f"node {v}: {result[v]!r} vs {want[v]!r}"
        return None
    if a == "tc":
        if G.n > oracles.CLIQUE_LIMIT:
            log.warning("clique enumeration skipped above %d nodes", oracles.CLIQUE_LIMIT)
            return None
        want = oracles.count_triangles(oracles.adjacency(G.A))
        return None if want == result else f"count {result}, oracle {want}"
    want = oracles.component_minima(oracles.adjacency(G.A))
    bad = np.flatnonzero(result != want)
    return None if bad.size == 0 else f"node {bad[0]}: label {result[bad[0]]}, oracle {want[bad[0]]}"


def run(cfg: RunConfig) -> Report:
    """Load, set up, run ``cfg.trials`` trials and optionally verify each one.

    Raises :class:`LoadFailure`, :class:`GraphBLASError` (precondition) or
    :class:`VerifyFailure`; the report built so far rides on the latter.
    """
    warnings = [f"--{name} has no effect for {cfg.algorithm}"
                for name in TUNABLES if name in cfg.given and name not in RELEVANT[cfg.algorithm]]
    if cfg.threads != 1:
        warnings.append("--threads is accepted but execution is single-threaded")
    for w in warnings:
        log.warning(w)

    G = load_graph(cfg)
    report = Report(cfg.algorithm, os.path.basename(cfg.input_path), G.n, G.nvals,
                    warnings=warnings)
    t0 = tic()
    setup_properties(G, cfg.algorithm)
    report.setup_seconds = toc(t0)

    uses_source = cfg.algorithm in ("bfs", "bc", "sssp")
    sources = trial_sources(cfg, G) if uses_source and G.n else [None] * cfg.trials
    mismatch = None
    for trial, source in enumerate(sources):
        t0 = tic()
        result, tuples, summary = execute(cfg, G, source)
        seconds = toc(t0)
        report.trials.append(TrialRecord(cfg.algorithm, report.graph, G.n, G.nvals, trial,
                                         seconds, result_digest(tuples)))
        report.summary = summary
        if cfg.verify and mismatch is None:
            problem = verify(cfg, G, source, result)
            if problem is not None:
                mismatch = f"trial {trial}: {problem}"
    if cfg.verify:
        report.verify = "PASS" if mismatch is None else f"FAIL ({mismatch})"
    if cfg.output_path:
        emit_report(report, cfg.output_path)
    if mismatch is not None:
        raise VerifyFailure(report)
    return report


def format_report(report: Report) -> str:
    lines = [f"graph: {report.graph}  n={report.n}  nvals={report.nvals}",
             f"setup: {report.setup_seconds:.6f} s"]
    for rec in report.trials:
        lines.append(f"trial {rec.trial}: {rec.seconds:.6f} s  digest={rec.result_digest}")
    secs = report.seconds
    if secs:
        lines.append(f"time: min {min(secs):.6f} s  mean {sum(secs) / len(secs):.6f} s")
    lines.extend(f"{k}: {v}" for k, v in report.summary.items())
    if report.verify is not None:
        lines.append(f"verify: {report.verify}")
    return "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="warning: %(message)s")
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    if cfg.trials < 1:
        print("error: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run(cfg)
    except LoadFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LOAD
    except VerifyFailure as exc:
        print(format_report(exc.args[0]))
        return EXIT_VERIFY
    except GraphBLASError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(format_report(report))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
