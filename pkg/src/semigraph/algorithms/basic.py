"""Basic-mode entry points.

Each computes whatever cached properties the matching Advanced algorithm
needs, stores them on the graph, and delegates.  Results are identical to
calling the Advanced form on the fully-propertied graph.
"""

from __future__ import annotations

from typing import Optional

from .. import util
from ..graph import (Graph, property_at, property_coldegree, property_ndiag,
                     property_rowdegree, property_symmetric_pattern)
from . import bfs as _bfs
from . import centrality as _bc
from . import components as _cc
from . import pagerank as _pr
from . import sssp as _sssp
from . import triangles as _tc


def bfs_push(G: Graph, source: int, compute_level: bool = False):
    return _bfs.bfs_push(G, source, compute_level)


def bfs_direction_optimizing(G: Graph, source: int, compute_level: bool = False, **kw):
    property_at(G)
    return _bfs.bfs_direction_optimizing(G, source, compute_level, **kw)


def betweenness_centrality(G: Graph, sources):
    property_at(G)
    return _bc.betweenness_centrality(G, sources)


def pagerank_gap(G: Graph, damping: float = 0.85, tol: float = 1e-4, itermax: int = 100):
    property_at(G)
    property_rowdegree(G)
    return _pr.pagerank_gap(G, damping, tol, itermax)


def sssp_delta_stepping(G: Graph, source: int, delta: Optional[float] = None):
    return _sssp.sssp_delta_stepping(G, source, delta)


def triangle_count(G: Graph, presort: Optional[bool] = None, seed: int = 0):
    property_symmetric_pattern(G)
    property_ndiag(G)
    property_rowdegree(G)
    return _tc.triangle_count(G, presort, seed)


def connected_components_fastsv(G: Graph):
    property_symmetric_pattern(G)
    return _cc.connected_components_fastsv(G)


def sort_by_degree(G: Graph, ascending: bool = True, by_row: bool = True):
    property_rowdegree(G) if by_row else property_coldegree(G)
    return util.sort_by_degree(G, ascending, by_row)


def sample_degree(G: Graph, sample_size: Optional[int] = None, seed: int = 0, by_row: bool = True):
    property_rowdegree(G) if by_row else property_coldegree(G)
    return util.sample_degree(G, sample_size, seed, by_row)
