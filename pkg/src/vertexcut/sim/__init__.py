"""Subgraph-centric BSP simulation of CC, SSSP and PageRank over a vertex-cut partition."""

from .engine import PROGRAMS, VertexProgram, run
from .subgraph import Subgraph, build_subgraphs
from .trace import SimulationTrace, TraceStats, trace_stats

__all__ = ["PROGRAMS", "VertexProgram", "run", "Subgraph", "build_subgraphs",
           "SimulationTrace", "TraceStats", "trace_stats"]
