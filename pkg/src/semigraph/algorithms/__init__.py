"""Advanced-mode graph algorithms.  See :mod:`.basic` for the forgiving entry points."""

from . import basic
from .bfs import BfsResult, bfs_direction_optimizing, bfs_push, parents_dense
from .centrality import CentralityResult, betweenness_centrality
from .components import ComponentResult, connected_components_fastsv, fastsv_iterates
from .pagerank import PageRankResult, pagerank_gap, pagerank_iterates
from .sssp import SsspResult, default_delta, sssp_delta_stepping
from .triangles import triangle_count

__all__ = [name for name in dir() if not name.startswith("_")]
