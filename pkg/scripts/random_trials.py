"""Run every algorithm on seeded random graphs and verify each result.

Graphs go through a Matrix Market round trip first, so the reader is
exercised too.  Prints one line per (algorithm, graph) and exits nonzero
if anything disagrees with its reference.
"""

import argparse
import sys
import tempfile
from pathlib import Path

import numpy as np

from semigraph import core
from semigraph.cli.runner import ALGORITHMS, RunConfig, VerifyFailure, run
from semigraph.io import mm_write


def random_graph(rng, n, avg_degree, undirected, weighted):
    m = rng.poisson(avg_degree * n)
    i, j = rng.integers(0, n, m), rng.integers(0, n, m)
    keep = i != j
    i, j = i[keep], j[keep]
    if undirected:
        i, j = np.concatenate([i, j]), np.concatenate([j, i])
    pairs = np.unique(np.stack([i, j], axis=1), axis=0)
    if weighted:
        w = rng.integers(1, 81, len(pairs)) / 8.0
        return core.build_matrix(n, n, pairs[:, 0], pairs[:, 1], w)
    return core.build_matrix(n, n, pairs[:, 0], pairs[:, 1], True)


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--graphs", type=int, default=10)
    p.add_argument("--max-n", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2)
    args = p.parse_args()

    rng = np.random.default_rng(args.seed)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for g in range(args.graphs):
            n = int(rng.integers(2, args.max_n + 1))
            avg = float(rng.choice([1.0, 2.0, 4.0, 8.0]))
            for algorithm in ALGORITHMS:
                undirected = algorithm in ("tc", "cc", "bc")
                A = random_graph(rng, n, avg, undirected, weighted=algorithm == "sssp")
                path = Path(tmp) / f"g{g}_{algorithm}.mtx"
                mm_write(A, path)
                cfg = RunConfig(algorithm, str(path), trials=args.trials, verify=True,
                                source_seed=args.seed + g, undirected=undirected)
                try:
                    report = run(cfg)
                    status = report.verify
                except VerifyFailure as exc:
                    report, status = exc.args[0], exc.args[0].verify
                    failures += 1
                best = min(report.seconds)
                print(f"{algorithm:5s} graph {g:3d}  n={n:5d}  nvals={report.nvals:7d}  "
                      f"best {best * 1e3:8.2f} ms  verify {status}")
    print(f"{failures} failures")
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
