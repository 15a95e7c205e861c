"""Sparse linear algebra over semirings, and graph algorithms built on it.

``semigraph.core`` holds the matrix/vector containers and the masked,
accumulating operations.  ``semigraph.graph`` wraps an adjacency matrix with
cached properties, ``semigraph.algorithms`` builds BFS, betweenness,
PageRank, SSSP, triangle counting and connected components from core
operations, and ``semigraph.io`` reads and writes matrices.
"""

from . import algorithms, core, io, util
from .errors import GraphBLASError, MissingProperty, PreconditionViolated, Status
from .graph import (DIRECTED, UNDIRECTED, BooleanProperty, Graph, Kind, check_graph,
                    delete_properties, display_graph, graph_new, property_at,
                    property_coldegree, property_ndiag, property_rowdegree,
                    property_symmetric_pattern)

__version__ = "0.1.0"
