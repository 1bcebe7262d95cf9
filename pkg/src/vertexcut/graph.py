"""Graph representation, SNAP-style edge-list ingestion and synthetic power-law graphs.

Vertex ids are dense in ``[0, num_vertices)``. The loader densifies whatever ids the
file uses by sorting the distinct original ids, so a file that already uses ``0..n-1``
keeps its numbering. Undirected edges are stored once per record; nothing here
doubles them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, NamedTuple

import numpy as np

from .errors import EdgeListParseError, EmptyGraphError, ValidationError

CACHE_MAGIC = "vertexcut-graph"
CACHE_VERSION = 1


class Edge(NamedTuple):
    src: int
    dst: int


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable edge list.

    ``src``/``dst`` hold dense vertex ids in file order. ``original_ids[v]`` is the id
    vertex ``v`` had in the source file (identity for generated graphs). ``weights``
    is only consulted by SSSP; ``None`` means every edge weighs 1.
    """

    num_vertices: int
    src: np.ndarray
    dst: np.ndarray
    directed: bool = False
    weights: np.ndarray | None = None
    original_ids: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        src = np.asarray(self.src, dtype=np.int64)
        dst = np.asarray(self.dst, dtype=np.int64)
        if src.shape != dst.shape or src.ndim != 1:
            raise ValidationError("src and dst must be 1-d arrays of equal length")
        n = int(self.num_vertices)
        if n < 0:
            raise ValidationError("num_vertices must be non-negative")
        if src.size and (min(src.min(), dst.min()) < 0 or max(src.max(), dst.max()) >= n):
            raise ValidationError("edge endpoint outside [0, num_vertices)")
        object.__setattr__(self, "num_vertices", n)
        object.__setattr__(self, "src", _frozen(src))
        object.__setattr__(self, "dst", _frozen(dst))
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.int64)
            if w.shape != src.shape:
                raise ValidationError("weights must have one entry per edge")
            if w.size and w.min() < 0:
                raise ValidationError("edge weights must be non-negative")
            object.__setattr__(self, "weights", _frozen(w))
        ids = self.original_ids
        ids = np.arange(n, dtype=np.int64) if ids is None else np.asarray(ids, dtype=np.int64)
        if ids.shape != (n,):
            raise ValidationError("original_ids must have one entry per vertex")
        object.__setattr__(self, "original_ids", _frozen(ids))

    @classmethod
    def from_edges(cls, edges, num_vertices: int | None = None, directed: bool = False,
                   weights=None) -> Graph:
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if num_vertices is None:
            num_vertices = int(arr.max()) + 1 if arr.size else 0
        return cls(num_vertices, arr[:, 0], arr[:, 1], directed=directed, weights=weights)

    @property
    def num_edges(self) -> int:
        return int(self.src.size)

    def __len__(self) -> int:
        return self.num_edges

    def edge(self, k: int) -> Edge:
        return Edge(int(self.src[k]), int(self.dst[k]))

    def edges(self) -> Iterator[Edge]:
        for u, v in zip(self.src.tolist(), self.dst.tolist()):
            yield Edge(u, v)

    def edge_weights(self) -> np.ndarray:
        if self.weights is None:
            return np.ones(self.num_edges, dtype=np.int64)
        return self.weights

    @cached_property
    def degrees(self) -> np.ndarray:
        # a self-loop is one incident record, so it counts once
        n = self.num_vertices
        deg = np.bincount(self.src, minlength=n) + np.bincount(self.dst, minlength=n)
        loops = self.src == self.dst
        if loops.any():
            deg -= np.bincount(self.src[loops], minlength=n)
        return _frozen(deg.astype(np.int64))

    @cached_property
    def covered(self) -> np.ndarray:
        """Boolean mask of vertices touched by at least one edge."""
        return _frozen(self.degrees > 0)

    @property
    def num_covered_vertices(self) -> int:
        return int(np.count_nonzero(self.covered))

    def vertex_of(self, original_id: int) -> int:
        """Dense id for an original id; raises ``KeyError`` if absent."""
        ids = self.original_ids
        pos = int(np.searchsorted(ids, original_id))
        if pos < ids.size and ids[pos] == original_id:
            return pos
        # original ids are sorted for loaded graphs; fall back for arbitrary maps
        hits = np.flatnonzero(ids == original_id)
        if hits.size:
            return int(hits[0])
        raise KeyError(original_id)


def degree_table(g: Graph) -> np.ndarray:
    """Number of edge records incident to each vertex (self-loops counted once)."""
    return g.degrees


@dataclass(frozen=True)
class LoaderOptions:
    dedupe: bool = False
    drop_self_loops: bool = False
    weighted: bool = False


def load_edge_list(path, directed: bool = False, options: LoaderOptions | None = None) -> Graph:
    """Read a whitespace-separated ``src dst [weight]`` edge list.

    Lines starting with ``#`` and blank lines are skipped. The third column is only
    accepted with ``options.weighted``; missing weights then default to 1.
    """
    options = options or LoaderOptions()
    path = Path(path)
    srcs: list[int] = []
    dsts: list[int] = []
    wts: list[int] = []
    max_tokens = 3 if options.weighted else 2
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            tokens = stripped.split()
            if not 2 <= len(tokens) <= max_tokens:
                raise EdgeListParseError(path, lineno, line,
                                         f"expected 2..{max_tokens} tokens, got {len(tokens)}")
            try:
                vals = [int(t) for t in tokens]
            except ValueError:
                raise EdgeListParseError(path, lineno, line, "non-integer token") from None
            srcs.append(vals[0])
            dsts.append(vals[1])
            if options.weighted:
                if len(vals) == 3 and vals[2] < 0:
                    raise EdgeListParseError(path, lineno, line, "negative weight")
                wts.append(vals[2] if len(vals) == 3 else 1)
    if not srcs:
        raise EmptyGraphError(f"{path}: no edges")

    src = np.asarray(srcs, dtype=np.int64)
    dst = np.asarray(dsts, dtype=np.int64)
    w = np.asarray(wts, dtype=np.int64) if options.weighted else None

    keep = np.ones(src.size, dtype=bool)
    if options.drop_self_loops:
        keep &= src != dst
    if options.dedupe:
        a, b = (src, dst) if directed else (np.minimum(src, dst), np.maximum(src, dst))
        pairs = np.stack([a, b], axis=1)
        pairs[~keep] = np.iinfo(np.int64).min  # dropped loops must not shadow real edges
        _, first = np.unique(pairs, axis=0, return_index=True)
        mask = np.zeros_like(keep)
        mask[first] = True
        keep &= mask
    src, dst = src[keep], dst[keep]
    if w is not None:
        w = w[keep]
    if src.size == 0:
        raise EmptyGraphError(f"{path}: no edges left after filtering")

    original_ids, inverse = np.unique(np.concatenate([src, dst]), return_inverse=True)
    m = src.size
    return Graph(original_ids.size, inverse[:m], inverse[m:], directed=directed,
                 weights=w, original_ids=original_ids)


def write_edge_list(g: Graph, path) -> None:
    """Write ``g`` using original ids; ``load_edge_list`` reads it back edge-for-edge."""
    ids = g.original_ids
    lines = [f"# vertices {g.num_vertices} edges {g.num_edges} "
             f"{'directed' if g.directed else 'undirected'}\n"]
    s, d = ids[g.src].tolist(), ids[g.dst].tolist()
    if g.weights is None:
        lines.extend(f"{a} {b}\n" for a, b in zip(s, d))
    else:
        lines.extend(f"{a} {b} {c}\n" for a, b, c in zip(s, d, g.weights.tolist()))
    atomic_write_text(path, "".join(lines))


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def save_graph_cache(g: Graph, path) -> None:
    """Binary cache: an ``.npz`` archive with a magic string and format version."""
    path = Path(path)
    arrays = dict(
        magic=np.array(CACHE_MAGIC), version=np.array(CACHE_VERSION),
        num_vertices=np.array(g.num_vertices), directed=np.array(g.directed),
        src=g.src, dst=g.dst, original_ids=g.original_ids,
    )
    if g.weights is not None:
        arrays["weights"] = g.weights
    tmp = path.with_name(path.name + ".tmp.npz")
    np.savez(tmp, **arrays)
    os.replace(tmp, path)


def load_graph_cache(path) -> Graph:
    with np.load(path, allow_pickle=False) as z:
        if "magic" not in z or str(z["magic"]) != CACHE_MAGIC:
            raise ValidationError(f"{path}: not a graph cache file")
        version = int(z["version"])
        if version != CACHE_VERSION:
            raise ValidationError(f"{path}: unsupported cache version {version}")
        return Graph(int(z["num_vertices"]), z["src"], z["dst"], directed=bool(z["directed"]),
                     weights=z["weights"] if "weights" in z else None,
                     original_ids=z["original_ids"])


@dataclass(frozen=True)
class PowerLawSpec:
    num_vertices: int
    target_avg_degree: float
    eta: float
    seed: int = 0

    def validate(self) -> None:
        if self.eta <= 1:
            raise ValidationError(f"eta must be > 1, got {self.eta}")
        if self.num_vertices < 2:
            raise ValidationError("num_vertices must be >= 2")
        if not 0 < self.target_avg_degree < self.num_vertices:
            raise ValidationError(
                f"target_avg_degree must lie in (0, num_vertices); got {self.target_avg_degree}")


def chung_lu_weights(n: int, avg_degree: float, eta: float) -> np.ndarray:
    """Expected degrees w_i proportional to (i+1)^(-1/(eta-1)), scaled to mean ``avg_degree``.

    The rank-size form gives P(w > x) ~ x^(1-eta), i.e. a degree density ~ d^(-eta).
    Weights are clipped to n-1.
    """
    w = np.arange(1, n + 1, dtype=np.float64) ** (-1.0 / (eta - 1.0))
    w *= avg_degree * n / w.sum()
    return np.minimum(w, n - 1)


def generate_power_law(spec: PowerLawSpec) -> Graph:
    """Undirected Chung-Lu style graph with a power-law expected-degree sequence.

    Endpoints are sampled independently in proportion to the expected degrees until
    ``round(n * avg / 2)`` distinct non-loop edges exist (or sampling stalls). Vertex
    labels are shuffled so that id order carries no degree information.
    """
    spec.validate()
    n = spec.num_vertices
    rng = np.random.default_rng(spec.seed)
    w = chung_lu_weights(n, spec.target_avg_degree, spec.eta)
    prob = w / w.sum()
    cdf = np.cumsum(prob)
    cdf[-1] = 1.0
    target = max(1, int(round(n * spec.target_avg_degree / 2)))
    target = min(target, n * (n - 1) // 2)

    seen_keys = np.empty(0, dtype=np.int64)
    src = np.empty(0, dtype=np.int64)
    dst = np.empty(0, dtype=np.int64)
    for _ in range(64):
        need = target - src.size
        if need <= 0:
            break
        batch = int(need * 1.1) + 16
        a = np.searchsorted(cdf, rng.random(batch), side="right")
        b = np.searchsorted(cdf, rng.random(batch), side="right")
        ok = a != b
        a, b = a[ok], b[ok]
        keys = np.minimum(a, b) * n + np.maximum(a, b)
        _, first = np.unique(keys, return_index=True)
        first.sort()
        a, b, keys = a[first], b[first], keys[first]
        fresh = ~np.isin(keys, seen_keys)
        a, b, keys = a[fresh][:need], b[fresh][:need], keys[fresh][:need]
        src = np.concatenate([src, a])
        dst = np.concatenate([dst, b])
        seen_keys = np.concatenate([seen_keys, keys])

    relabel = rng.permutation(n)
    return Graph(n, relabel[src], relabel[dst], directed=False)
