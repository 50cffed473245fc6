"""Exact local metric dimension of graphs and of subgraph-amalgamations."""

from .amalgam import Amalgam, Embedding, amalgamate, amalgamate_maps, check_embedding, is_isometric_family
from .bounds import BoundReport, bound_report, min_cotraversal, min_out_solving, min_traversal, parallel_edges
from .errors import AmalgadimError, BudgetExceeded, Disconnected, InvalidEmbedding, ParseError
from .families import FamilySpec, generate
from .formats import load_amalgam, read_graph, write_graph
from .graph import Graph, all_pairs_distances, build_graph
from .hitting import Budget
from .localmetric import enumerate_minimum_bases, is_local_metric_set, local_metric_dimension

__version__ = "0.1.0"

__all__ = [
    "Amalgam", "AmalgadimError", "BoundReport", "Budget", "BudgetExceeded", "Disconnected", "Embedding",
    "FamilySpec", "Graph", "InvalidEmbedding", "ParseError", "all_pairs_distances", "amalgamate",
    "amalgamate_maps", "bound_report", "build_graph", "check_embedding", "enumerate_minimum_bases", "generate",
    "is_isometric_family", "is_local_metric_set", "load_amalgam", "local_metric_dimension", "min_cotraversal",
    "min_out_solving", "min_traversal", "parallel_edges", "read_graph", "write_graph",
]
