"""Whole-graph sequential results used by ``simulate --verify``."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components, dijkstra

from ..graph import Graph
from .engine import VertexProgram
from .subgraph import directed_arcs, out_degrees


def reference_cc(g: Graph) -> np.ndarray:
    """Weakly connected component labels: the smallest vertex id in each component."""
    n = g.num_vertices
    adj = sp.csr_matrix((np.ones(g.num_edges), (g.src, g.dst)), shape=(n, n))
    _, comp = connected_components(adj, directed=True, connection="weak")
    low = np.full(comp.max() + 1 if n else 0, n, dtype=np.int64)
    np.minimum.at(low, comp, np.arange(n))
    return low[comp]


def reference_sssp(g: Graph, source: int) -> np.ndarray:
    n = g.num_vertices
    s, d, w, _ = directed_arcs(g)
    # csr construction sums duplicates, so keep only the lightest parallel arc
    key = s * n + d
    order = np.lexsort((w, key))
    first = np.ones(order.size, dtype=bool)
    first[1:] = key[order][1:] != key[order][:-1]
    keep = order[first]
    adj = sp.csr_matrix((w[keep].astype(np.float64), (s[keep], d[keep])), shape=(n, n))
    return dijkstra(adj, directed=True, indices=source)


def reference_pagerank(g: Graph, iterations: int, damping: float = 0.85) -> np.ndarray:
    """Synchronous power iteration; rank of dangling vertices is not redistributed."""
    n = g.num_vertices
    s, d, _, _ = directed_arcs(g)
    inv = 1.0 / np.maximum(out_degrees(g), 1)
    rank = np.full(n, 1.0 / n)
    for _ in range(iterations):
        rank = (1.0 - damping) / n + damping * np.bincount(d, weights=rank[s] * inv[s], minlength=n)
    return rank


def reference_values(g: Graph, prog: VertexProgram) -> np.ndarray:
    if prog.algorithm == "cc":
        return reference_cc(g)
    if prog.algorithm == "sssp":
        return reference_sssp(g, prog.source)
    return reference_pagerank(g, prog.iterations, prog.damping)


def values_match(g: Graph, prog: VertexProgram, values: np.ndarray, pr_tol: float = 1e-9) -> bool:
    ref = reference_values(g, prog)
    if prog.algorithm == "pr":
        return bool(np.all(np.abs(values - ref) <= pr_tol))
    return bool(np.array_equal(values, ref))
