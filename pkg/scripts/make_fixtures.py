"""Write the small named graphs used in examples and smoke runs as Matrix Market files."""

import argparse
from pathlib import Path

import numpy as np

from semigraph import core
from semigraph.io import bin_write, mm_write


def named_graphs():
    def undirected(n, edges):
        e = np.array(edges, dtype=np.int64)
        i = np.concatenate([e[:, 0], e[:, 1]])
        j = np.concatenate([e[:, 1], e[:, 0]])
        return core.build_matrix(n, n, i, j, True)

    yield "k3", undirected(3, [(1, 0), (2, 0), (2, 1)]), "symmetric"
    yield "k4", undirected(4, [(i, j) for i in range(4) for j in range(i)]), "symmetric"
    yield "c4", undirected(4, [(0, 1), (1, 2), (2, 3), (3, 0)]), "symmetric"
    yield "two_edges", undirected(4, [(0, 1), (2, 3)]), "symmetric"
    yield "path3", core.build_matrix(3, 3, [0, 1], [1, 2], True), "general"
    yield "star3", core.build_matrix(4, 4, [0, 0, 0], [1, 2, 3], True), "general"
    yield "diamond", core.build_matrix(3, 3, [0, 0, 1], [1, 2, 2], [1.0, 4.0, 1.0]), "general"


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("outdir", nargs="?", default="fixtures")
    p.add_argument("--binary", action="store_true", help="also write .lagk copies")
    args = p.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, A, symmetry in named_graphs():
        mm_write(A, out / f"{name}.mtx", symmetry)
        if args.binary:
            bin_write(A, out / f"{name}.lagk")
        print(f"{name}: {A.nrows} nodes, {A.nvals} entries")


if __name__ == "__main__":
    main()
