"""EBV greedy vertex-cut partitioner.

Each edge goes to the subgraph minimising

    [u not in keep[i]] + [v not in keep[i]]
        + alpha * e_count[i] / (|E|/p) + beta * v_count[i] / (|V|/p)

with edges optionally pre-sorted by ascending degree sum of their endpoints.

Two routes compute the same assignment: :func:`ebv_steps` walks edges in pure
Python through :func:`evaluate` and exposes every score, and :func:`partition_ebv`
runs a compiled loop for real graphs. Both evaluate the score with the same
floating-point expression, so they agree bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numba
import numpy as np

from .assignment import PartitionAssignment
from .errors import ValidationError
from .graph import Edge, Graph

TIE_BREAKS = ("highest-index", "lowest-index")


@dataclass(frozen=True)
class EbvParams:
    p: int
    alpha: float = 1.0
    beta: float = 1.0
    sort: bool = True
    tie_break: str = "highest-index"

    def validate(self) -> None:
        if int(self.p) != self.p or self.p < 1:
            raise ValidationError(f"p must be a positive integer, got {self.p}")
        if not self.alpha > 0 or not self.beta > 0:
            raise ValidationError("alpha and beta must be > 0")
        if self.tie_break not in TIE_BREAKS:
            raise ValidationError(f"tie_break must be one of {TIE_BREAKS}")

    def as_dict(self) -> dict:
        return {"p": self.p, "alpha": self.alpha, "beta": self.beta, "sort": self.sort,
                "tie_break": self.tie_break}


class PartitionerState:
    """Working state of the greedy loop: keep-set bitmaps plus edge/vertex counters."""

    def __init__(self, p: int, num_vertices: int):
        self.keep = np.zeros((p, num_vertices), dtype=np.bool_)
        self.e_count = np.zeros(p, dtype=np.int64)
        self.v_count = np.zeros(p, dtype=np.int64)

    @property
    def p(self) -> int:
        return self.e_count.size

    def assign(self, e: Edge, i: int) -> None:
        u, v = e
        self.e_count[i] += 1
        if not self.keep[i, u]:
            self.keep[i, u] = True
            self.v_count[i] += 1
        if not self.keep[i, v]:
            self.keep[i, v] = True
            self.v_count[i] += 1

    def check(self, edges_processed: int) -> None:
        assert (self.v_count == self.keep.sum(axis=1)).all()
        assert int(self.e_count.sum()) == edges_processed


def evaluate(state: PartitionerState, e: Edge, i: int, params: EbvParams,
             totals: tuple[int, int]) -> float:
    """Score of placing edge ``e`` on subgraph ``i``; lower is better. Pure."""
    num_edges, num_vertices = totals
    u, v = e
    ind = float(not state.keep[i, u]) + float(not state.keep[i, v])
    ep = num_edges / params.p
    vp = num_vertices / params.p
    return ind + params.alpha * float(state.e_count[i]) / ep + params.beta * float(state.v_count[i]) / vp


def sort_edges(g: Graph) -> np.ndarray:
    """Edge positions ordered by ascending ``deg[src] + deg[dst]``; ties keep input order."""
    deg = g.degrees
    return np.argsort(deg[g.src] + deg[g.dst], kind="stable")


def _processing_order(g: Graph, params: EbvParams) -> np.ndarray:
    return sort_edges(g) if params.sort else np.arange(g.num_edges, dtype=np.int64)


def _choose(scores, highest: bool) -> int:
    best = 0
    for i in range(1, len(scores)):
        if scores[i] < scores[best] or (highest and scores[i] == scores[best]):
            best = i
    return best


class EbvStep(NamedTuple):
    position: int   # index of the edge in the graph's edge list
    edge: Edge
    scores: tuple[float, ...]
    choice: int


def ebv_steps(g: Graph, params: EbvParams) -> Iterator[EbvStep]:
    """Run the greedy loop in pure Python, yielding the score vector of every step."""
    params.validate()
    state = PartitionerState(params.p, g.num_vertices)
    totals = (g.num_edges, g.num_vertices)
    highest = params.tie_break == "highest-index"
    for k in _processing_order(g, params).tolist():
        e = g.edge(k)
        scores = tuple(evaluate(state, e, i, params, totals) for i in range(params.p))
        i = _choose(scores, highest)
        state.assign(e, i)
        yield EbvStep(k, e, scores, i)


@numba.njit(cache=True)
def _ebv_kernel(src, dst, order, num_vertices, p, alpha, beta, highest):
    m = src.shape[0]
    keep = np.zeros((p, num_vertices), dtype=np.bool_)
    e_count = np.zeros(p, dtype=np.int64)
    v_count = np.zeros(p, dtype=np.int64)
    part = np.empty(m, dtype=np.int64)
    vsum_after = np.empty(m, dtype=np.int64)
    ep = m / p
    vp = num_vertices / p
    total_v = 0
    for t in range(m):
        k = order[t]
        u = src[k]
        v = dst[k]
        best = 0
        best_score = np.inf
        for i in range(p):
            ind = 0.0
            if not keep[i, u]:
                ind += 1.0
            if not keep[i, v]:
                ind += 1.0
            score = ind + alpha * float(e_count[i]) / ep + beta * float(v_count[i]) / vp
            if score < best_score or (highest and score == best_score):
                best = i
                best_score = score
        part[k] = best
        e_count[best] += 1
        if not keep[best, u]:
            keep[best, u] = True
            v_count[best] += 1
            total_v += 1
        if not keep[best, v]:
            keep[best, v] = True
            v_count[best] += 1
            total_v += 1
        vsum_after[t] = total_v
    return part, e_count, v_count, vsum_after


def _run_kernel(g: Graph, params: EbvParams):
    params.validate()
    if g.num_edges == 0:
        raise ValidationError("cannot partition a graph with no edges")
    order = _processing_order(g, params)
    return _ebv_kernel(g.src, g.dst, order, g.num_vertices, int(params.p),
                       float(params.alpha), float(params.beta),
                       params.tie_break == "highest-index")


def partition_ebv(g: Graph, params: EbvParams) -> PartitionAssignment:
    part, _, _, _ = _run_kernel(g, params)
    return PartitionAssignment(g, part, int(params.p), algorithm="ebv", params=params.as_dict())


def replication_growth(g: Graph, params: EbvParams) -> np.ndarray:
    """Replication factor after each of the processed edges, in processing order.

    The denominator is the final number of covered vertices, so the last entry equals
    the partition's replication factor.
    """
    _, _, _, vsum_after = _run_kernel(g, params)
    return vsum_after / g.num_covered_vertices
