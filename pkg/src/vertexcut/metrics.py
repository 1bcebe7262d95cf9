"""Partition-quality metrics and the EBV imbalance bounds."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .assignment import PartitionAssignment
from .graph import Graph

CSV_COLUMNS = ("algorithm", "p", "alpha", "beta", "sort", "edge_imb", "vertex_imb",
               "repl_factor", "t1_bound", "t2_bound")

_FLOOR_GUARD = 1e-9


def _guarded_floor(x: float) -> int:
    return math.floor(x + _FLOOR_GUARD)


def edge_gap_bound(num_edges: int, p: int, alpha: float, beta: float) -> int:
    """Largest e_count[i] - e_count[j] the greedy loop can ever reach."""
    return 1 + _guarded_floor(2 * num_edges / (alpha * p) + (beta / alpha) * num_edges)


def theorem_bounds(num_edges: int, num_vertices: int, sum_vi: int, p: int,
                   alpha: float, beta: float) -> tuple[float, float]:
    """Upper bounds on the edge and vertex imbalance factors of an EBV partition."""
    edge = 1 + (p - 1) / num_edges * edge_gap_bound(num_edges, p, alpha, beta)
    vtx = 1 + (p - 1) / sum_vi * (
        1 + _guarded_floor(2 * num_vertices / (beta * p) + (alpha / beta) * num_vertices))
    return edge, vtx


@dataclass(frozen=True)
class MetricsReport:
    algorithm: str
    p: int
    edge_imbalance: float
    vertex_imbalance: float
    replication_factor: float
    per_subgraph: list[tuple[int, int]]
    alpha: float | None = None
    beta: float | None = None
    sort: bool | None = None
    theorem1_bound: float | None = None
    theorem2_bound: float | None = None
    bounds_hold: tuple[bool, bool] | None = None
    isolated_vertices: int = 0
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_subgraph"] = [list(x) for x in self.per_subgraph]
        d["bounds_hold"] = list(self.bounds_hold) if self.bounds_hold is not None else None
        return d

    def csv_row(self) -> dict:
        def num(x):
            return "" if x is None else format(x, ".10g")
        return {
            "algorithm": self.algorithm, "p": self.p, "alpha": num(self.alpha),
            "beta": num(self.beta), "sort": "" if self.sort is None else str(self.sort).lower(),
            "edge_imb": num(self.edge_imbalance), "vertex_imb": num(self.vertex_imbalance),
            "repl_factor": num(self.replication_factor), "t1_bound": num(self.theorem1_bound),
            "t2_bound": num(self.theorem2_bound),
        }


def compute_metrics(g: Graph, a: PartitionAssignment, alpha: float | None = None,
                    beta: float | None = None) -> MetricsReport:
    """Exact imbalance and replication figures for an assignment.

    Theorem bounds are filled in for EBV assignments (alpha/beta taken from the
    assignment unless given) or whenever alpha and beta are passed explicitly.
    Isolated vertices are left out of the replication-factor denominator.
    """
    if a.graph is not g and a.graph.num_edges != g.num_edges:
        raise ValueError("assignment was made for a different graph")
    p = a.p
    e_counts = a.edge_counts
    v_counts = a.vertex_counts
    m = g.num_edges
    sum_vi = int(v_counts.sum())
    edge_imb = float(e_counts.max()) / (m / p)
    vertex_imb = float(v_counts.max()) / (sum_vi / p)
    rf = sum_vi / g.num_covered_vertices

    if a.algorithm == "ebv":
        alpha = a.params.get("alpha") if alpha is None else alpha
        beta = a.params.get("beta") if beta is None else beta
    t1 = t2 = hold = None
    if alpha is not None and beta is not None:
        t1, t2 = theorem_bounds(m, g.num_vertices, sum_vi, p, alpha, beta)
        hold = (edge_imb <= t1, vertex_imb <= t2)
    sort = a.params.get("sort") if a.algorithm == "ebv" else None
    return MetricsReport(
        algorithm=a.algorithm, p=p, edge_imbalance=edge_imb, vertex_imbalance=vertex_imb,
        replication_factor=rf,
        per_subgraph=[(int(e), int(v)) for e, v in zip(e_counts, v_counts)],
        alpha=alpha, beta=beta, sort=sort, theorem1_bound=t1, theorem2_bound=t2,
        bounds_hold=hold, isolated_vertices=g.num_vertices - g.num_covered_vertices,
        warnings=list(a.warnings),
    )


def max_running_edge_gap(order: np.ndarray, part: np.ndarray, p: int) -> int:
    """Max over all prefixes of the processing order of max_i e_count - min_j e_count."""
    counts = np.zeros(p, dtype=np.int64)
    worst = 0
    for k in np.asarray(order).tolist():
        counts[part[k]] += 1
        gap = int(counts.max() - counts.min())
        if gap > worst:
            worst = gap
    return worst


def metrics_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()
