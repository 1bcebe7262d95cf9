"""Edge-to-subgraph assignments and their on-disk formats."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .graph import Graph, atomic_write_text


@dataclass(frozen=True, eq=False)
class PartitionAssignment:
    """Per-edge subgraph index for a vertex-cut partition of ``graph``.

    ``params`` records how the assignment was produced (algorithm settings) and is
    copied verbatim into summaries. ``warnings`` collects non-fatal notes such as a
    degenerate CVC grid.
    """

    graph: Graph = field(repr=False)
    part: np.ndarray
    p: int
    algorithm: str = "unknown"
    params: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        part = np.ascontiguousarray(self.part, dtype=np.int64)
        if part.shape != (self.graph.num_edges,):
            raise ValidationError("assignment must give exactly one subgraph per edge")
        if self.p < 1:
            raise ValidationError("p must be >= 1")
        if part.size and (part.min() < 0 or part.max() >= self.p):
            raise ValidationError("subgraph index outside [0, p)")
        part.setflags(write=False)
        object.__setattr__(self, "part", part)

    @cached_property
    def edge_counts(self) -> np.ndarray:
        return np.bincount(self.part, minlength=self.p).astype(np.int64)

    @cached_property
    def _memberships(self) -> np.ndarray:
        # sorted unique (subgraph * n + vertex) codes for every (V_i, v) membership
        g = self.graph
        n = max(g.num_vertices, 1)
        codes = np.concatenate([self.part * n + g.src, self.part * n + g.dst])
        return np.unique(codes)

    @cached_property
    def vertex_counts(self) -> np.ndarray:
        n = max(self.graph.num_vertices, 1)
        return np.bincount(self._memberships // n, minlength=self.p).astype(np.int64)

    def vertex_set(self, i: int) -> np.ndarray:
        """Sorted vertex ids covered by the edges of subgraph ``i``."""
        n = max(self.graph.num_vertices, 1)
        codes = self._memberships
        lo, hi = np.searchsorted(codes, [i * n, (i + 1) * n])
        return codes[lo:hi] - i * n

    def vertex_sets(self) -> list[np.ndarray]:
        return [self.vertex_set(i) for i in range(self.p)]

    @cached_property
    def replicas(self) -> np.ndarray:
        """Number of subgraphs holding each vertex (0 for isolated vertices)."""
        n = max(self.graph.num_vertices, 1)
        return np.bincount(self._memberships % n, minlength=self.graph.num_vertices).astype(np.int64)

    def summary(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "p": self.p,
            "params": self.params,
            "num_edges": self.graph.num_edges,
            "num_vertices": self.graph.num_vertices,
            "subgraphs": [
                {"id": i, "e_count": int(e), "v_count": int(v)}
                for i, (e, v) in enumerate(zip(self.edge_counts, self.vertex_counts))
            ],
            "isolated_vertices": int(self.graph.num_vertices - self.graph.num_covered_vertices),
            "warnings": list(self.warnings),
        }


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def write_assignment(a: PartitionAssignment, path, summary_path=None) -> None:
    """One ``src dst part`` line per edge (original ids, input order) plus a JSON summary."""
    g = a.graph
    ids = g.original_ids
    rows = zip(ids[g.src].tolist(), ids[g.dst].tolist(), a.part.tolist())
    atomic_write_text(path, "".join(f"{s} {d} {k}\n" for s, d, k in rows))
    if summary_path is not None:
        atomic_write_text(summary_path, dumps_json(a.summary()))


def read_assignment(path, g: Graph, summary_path=None) -> PartitionAssignment:
    """Read an assignment file written for ``g``; edge lines must match ``g`` in order."""
    path = Path(path)
    ids = g.original_ids
    parts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip() or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 3:
                raise ValidationError(f"{path}:{lineno}: expected 'src dst part'")
            s, d, k = (int(t) for t in tokens)
            e = len(parts)
            if e >= g.num_edges or ids[g.src[e]] != s or ids[g.dst[e]] != d:
                raise ValidationError(f"{path}:{lineno}: edge does not match the graph")
            parts.append(k)
    if len(parts) != g.num_edges:
        raise ValidationError(f"{path}: {len(parts)} assignments for {g.num_edges} edges")
    meta = {}
    if summary_path is not None and Path(summary_path).exists():
        meta = json.loads(Path(summary_path).read_text(encoding="utf-8"))
    part = np.asarray(parts, dtype=np.int64)
    p = int(meta.get("p", int(part.max()) + 1 if part.size else 1))
    return PartitionAssignment(g, part, p, algorithm=meta.get("algorithm", "unknown"),
                               params=meta.get("params", {}),
                               warnings=tuple(meta.get("warnings", ())))
