"""Materialise the p worker-local subgraphs of a vertex-cut assignment."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..assignment import PartitionAssignment
from ..graph import Graph


@dataclass(eq=False)
class Subgraph:
    """Worker-local view of one part.

    Local vertex ``l`` is global vertex ``vertices[l]``. Arcs are directed; undirected
    input edges appear in both directions (a self-loop once). ``replicas[l]`` lists the
    other subgraphs holding vertex ``l``, empty for unreplicated vertices.
    """

    id: int
    vertices: np.ndarray
    arc_src: np.ndarray
    arc_dst: np.ndarray
    arc_weight: np.ndarray
    replicas: list[tuple[int, ...]]
    is_master: np.ndarray

    @property
    def num_vertices(self) -> int:
        return int(self.vertices.size)

    @property
    def num_arcs(self) -> int:
        return int(self.arc_src.size)

    def local_index(self, v: int) -> int | None:
        pos = int(np.searchsorted(self.vertices, v))
        if pos < self.vertices.size and self.vertices[pos] == v:
            return pos
        return None

    def replicated(self) -> list[int]:
        return [l for l, r in enumerate(self.replicas) if r]

    def adjacency(self, symmetric: bool):
        """CSR as Python lists ``(ptr, nbr, weight)``; ``symmetric`` adds reverse arcs."""
        s, d, w = self.arc_src, self.arc_dst, self.arc_weight
        if symmetric:
            s, d, w = np.concatenate([s, d]), np.concatenate([d, s]), np.concatenate([w, w])
        order = np.argsort(s, kind="stable")
        ptr = np.zeros(self.num_vertices + 1, dtype=np.int64)
        np.cumsum(np.bincount(s, minlength=self.num_vertices), out=ptr[1:])
        return ptr.tolist(), d[order].tolist(), w[order].tolist()


def directed_arcs(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Arcs of ``g`` with undirected edges doubled, plus each arc's edge position."""
    pos = np.arange(g.num_edges, dtype=np.int64)
    w = g.edge_weights()
    if g.directed:
        return g.src, g.dst, w, pos
    back = g.src != g.dst
    return (np.concatenate([g.src, g.dst[back]]), np.concatenate([g.dst, g.src[back]]),
            np.concatenate([w, w[back]]), np.concatenate([pos, pos[back]]))


def out_degrees(g: Graph) -> np.ndarray:
    s, _, _, _ = directed_arcs(g)
    return np.bincount(s, minlength=g.num_vertices).astype(np.int64)


def build_subgraphs(g: Graph, a: PartitionAssignment) -> list[Subgraph]:
    src, dst, w, pos = directed_arcs(g)
    arc_part = a.part[pos]
    vsets = a.vertex_sets()

    holders: dict[int, list[int]] = {}
    for i, vs in enumerate(vsets):
        for v in vs.tolist():
            holders.setdefault(v, []).append(i)

    subgraphs = []
    for i, vs in enumerate(vsets):
        mask = arc_part == i
        ls = np.searchsorted(vs, src[mask])
        ld = np.searchsorted(vs, dst[mask])
        replicas = []
        master = np.zeros(vs.size, dtype=np.bool_)
        for l, v in enumerate(vs.tolist()):
            hs = holders[v]
            master[l] = hs[0] == i
            replicas.append(tuple(h for h in hs if h != i))
        subgraphs.append(Subgraph(i, vs, ls, ld, w[mask], replicas, master))
    return subgraphs
