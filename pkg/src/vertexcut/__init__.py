"""Vertex-cut graph partitioning: EBV greedy partitioner, hash baselines, metrics and a
BSP message-count simulator."""

from .assignment import PartitionAssignment, read_assignment, write_assignment
from .baselines import BaselineParams, partition_cvc, partition_dbh, partition_random
from .ebv import EbvParams, PartitionerState, evaluate, partition_ebv, sort_edges
from .errors import EdgeListParseError, EmptyGraphError, ValidationError
from .graph import (Edge, Graph, LoaderOptions, PowerLawSpec, degree_table,
                    generate_power_law, load_edge_list, write_edge_list)
from .metrics import MetricsReport, compute_metrics, theorem_bounds

__version__ = "0.1.0"

__all__ = [
    "BaselineParams", "EbvParams", "Edge", "EdgeListParseError", "EmptyGraphError", "Graph",
    "LoaderOptions", "MetricsReport", "PartitionAssignment", "PartitionerState", "PowerLawSpec",
    "ValidationError", "compute_metrics", "degree_table", "evaluate", "generate_power_law",
    "load_edge_list", "partition_cvc", "partition_dbh", "partition_ebv", "partition_random",
    "read_assignment", "sort_edges", "theorem_bounds", "write_assignment", "write_edge_list",
]
