"""Deterministic subgraph-centric BSP simulator.

Each superstep has a computation stage (every worker runs its local algorithm to
local convergence), a communication stage (replicated vertices exchange values with
their remote replicas) and a barrier. Outgoing messages are buffered per worker and
only delivered at the barrier, so workers can run their stages in any order, or
concurrently, without changing the trace.

CC and SSSP are min-propagation programs: a replica whose value dropped during the
computation stage sends the new value to every remote replica, and receivers keep
the minimum. PageRank runs a fixed number of synchronous iterations; every replica
that is not the master sends its partial in-sum to the master (lowest subgraph
index), which combines and broadcasts the new rank back, both legs inside the same
superstep.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..assignment import PartitionAssignment
from ..errors import ValidationError
from ..graph import Graph
from .subgraph import Subgraph, build_subgraphs, out_degrees
from .trace import SimulationTrace

PROGRAMS = ("cc", "sssp", "pr")


@dataclass(frozen=True)
class VertexProgram:
    algorithm: str
    source: int | None = None   # dense vertex id, SSSP only
    iterations: int = 10        # PR only
    damping: float = 0.85       # PR only

    def validate(self, g: Graph) -> None:
        if self.algorithm not in PROGRAMS:
            raise ValidationError(f"unknown program {self.algorithm!r}; expected one of {PROGRAMS}")
        if self.algorithm == "sssp":
            if self.source is None or not 0 <= self.source < g.num_vertices:
                raise ValidationError(f"SSSP source {self.source} is not a vertex of the graph")
        if self.algorithm == "pr":
            if self.iterations < 1:
                raise ValidationError("PR needs at least one iteration")
            if not 0 <= self.damping <= 1:
                raise ValidationError("damping must lie in [0, 1]")


class _MinWorker:
    """Worker for CC (min label, edges treated as undirected) and SSSP (min distance)."""

    def __init__(self, sg: Subgraph, prog: VertexProgram):
        self.sg = sg
        self.add_weight = prog.algorithm == "sssp"
        self.ptr, self.nbr, self.wt = sg.adjacency(symmetric=prog.algorithm == "cc")
        gids = sg.vertices.tolist()
        self.gids = gids
        self.local = {v: l for l, v in enumerate(gids)}
        self.replicated = sg.replicated()
        if prog.algorithm == "cc":
            self.values = [float(v) for v in gids]
            self.seeds = [(float(v), l) for l, v in enumerate(gids)]
        else:
            self.values = [math.inf] * len(gids)
            src = self.local.get(prog.source)
            self.seeds = []
            if src is not None:
                self.values[src] = 0.0
                self.seeds = [(0.0, src)]

    def step(self, inbox):
        vals = self.values
        heap, self.seeds = self.seeds, []
        changes = 0
        for _, gid, x in inbox:
            l = self.local[gid]
            if x < vals[l]:
                vals[l] = x
                changes += 1
                heap.append((x, l))
        heapq.heapify(heap)
        before = [vals[l] for l in self.replicated]

        ptr, nbr, wt, add = self.ptr, self.nbr, self.wt, self.add_weight
        units = 0
        while heap:
            x, l = heapq.heappop(heap)
            if x > vals[l]:
                continue
            lo, hi = ptr[l], ptr[l + 1]
            units += hi - lo
            for j in range(lo, hi):
                y = x + wt[j] if add else x
                n = nbr[j]
                if y < vals[n]:
                    vals[n] = y
                    changes += 1
                    heapq.heappush(heap, (y, n))

        outbox: dict[int, list] = {}
        for l, old in zip(self.replicated, before):
            if vals[l] < old:
                for r in self.sg.replicas[l]:
                    outbox.setdefault(r, []).append((self.sg.id, self.gids[l], vals[l]))
        return outbox, units, changes

    def result(self):
        for l, v in enumerate(self.gids):
            if self.sg.is_master[l]:
                yield v, self.values[l]


class _PageRankWorker:
    def __init__(self, sg: Subgraph, outdeg: np.ndarray, base: float, damping: float):
        self.sg = sg
        self.gids = sg.vertices.tolist()
        self.local = {v: l for l, v in enumerate(self.gids)}
        self.inv_outdeg = np.zeros(sg.num_vertices)
        od = outdeg[sg.vertices]
        np.divide(1.0, od, out=self.inv_outdeg, where=od > 0)
        self.base = base
        self.damping = damping
        self.rank = np.full(sg.num_vertices, 0.0)
        self.partial = None
        self.master_of = [min((sg.id,) + r) for r in sg.replicas]
        self.replicated = sg.replicated()

    def init(self, value: float) -> None:
        self.rank[:] = value

    def gather(self):
        sg = self.sg
        contrib = self.rank[sg.arc_src] * self.inv_outdeg[sg.arc_src]
        self.partial = np.bincount(sg.arc_dst, weights=contrib, minlength=sg.num_vertices)
        outbox: dict[int, list] = {}
        for l in self.replicated:
            m = self.master_of[l]
            if m != sg.id:
                outbox.setdefault(m, []).append((sg.id, self.gids[l], float(self.partial[l])))
        return outbox, sg.num_arcs

    def combine(self, inbox):
        sg = self.sg
        new = self.base + self.damping * self.partial
        parts: dict[int, list] = {}
        for sender, gid, x in inbox:
            parts.setdefault(self.local[gid], []).append((sender, x))
        outbox: dict[int, list] = {}
        for l in self.replicated:
            if self.master_of[l] != sg.id:
                continue
            terms = sorted(parts.get(l, []) + [(sg.id, float(self.partial[l]))])
            total = 0.0
            for _, x in terms:
                total += x
            new[l] = self.base + self.damping * total
            for r in sg.replicas[l]:
                outbox.setdefault(r, []).append((sg.id, self.gids[l], float(new[l])))
        self.rank = new
        return outbox

    def apply(self, inbox) -> None:
        for _, gid, x in inbox:
            self.rank[self.local[gid]] = x

    def result(self):
        for l, v in enumerate(self.gids):
            if self.sg.is_master[l]:
                yield v, float(self.rank[l])


def _deliver(outboxes, p: int):
    """Barrier: route buffered messages, inbox order fixed by sender id."""
    inboxes = [[] for _ in range(p)]
    sent = np.zeros(p, dtype=np.int64)
    received = np.zeros(p, dtype=np.int64)
    for sender, box in enumerate(outboxes):
        for dest in sorted(box):
            msgs = box[dest]
            inboxes[dest].extend(msgs)
            sent[sender] += len(msgs)
            received[dest] += len(msgs)
    return inboxes, sent, received


class _Schedule:
    def __init__(self, kind: str, p: int):
        if kind not in ("serial", "threads"):
            raise ValidationError(f"unknown executor {kind!r}")
        self.pool = ThreadPoolExecutor(max_workers=min(p, 8)) if kind == "threads" else None

    def map(self, fn, *seqs):
        if self.pool is None:
            return [fn(*args) for args in zip(*seqs)]
        return list(self.pool.map(fn, *seqs))

    def close(self):
        if self.pool is not None:
            self.pool.shutdown()


def run(g: Graph, a: PartitionAssignment, prog: VertexProgram, *,
        subgraphs: list[Subgraph] | None = None, executor: str = "serial",
        max_supersteps: int | None = None) -> tuple[np.ndarray, SimulationTrace]:
    """Simulate ``prog`` on the partition ``a``; returns per-vertex values and the trace.

    CC values are component labels (smallest dense vertex id in the weakly connected
    component), SSSP values are distances (``inf`` if unreachable), PR values ranks.
    """
    prog.validate(g)
    if subgraphs is None:
        subgraphs = build_subgraphs(g, a)
    p = len(subgraphs)
    sched = _Schedule(executor, p)
    sent_cols, recv_cols, unit_cols = [], [], []
    try:
        if prog.algorithm == "pr":
            values = _run_pagerank(g, subgraphs, prog, sched, sent_cols, recv_cols, unit_cols)
        else:
            values = _run_min(g, subgraphs, prog, sched, sent_cols, recv_cols, unit_cols,
                              max_supersteps or 4 * g.num_vertices + 16)
    finally:
        sched.close()

    def stack(cols):
        return np.stack(cols, axis=1) if cols else np.zeros((p, 0), dtype=np.int64)

    trace = SimulationTrace(prog.algorithm, stack(sent_cols), stack(recv_cols), stack(unit_cols))
    return values, trace


def _run_min(g, subgraphs, prog, sched, sent_cols, recv_cols, unit_cols, limit):
    p = len(subgraphs)
    workers = [_MinWorker(sg, prog) for sg in subgraphs]
    inboxes = [[] for _ in range(p)]
    for _ in range(limit):
        out = sched.map(lambda w, box: w.step(box), workers, inboxes)
        inboxes, sent, received = _deliver([o[0] for o in out], p)
        sent_cols.append(sent)
        recv_cols.append(received)
        unit_cols.append(np.array([o[1] for o in out], dtype=np.int64))
        if sent.sum() == 0 and sum(o[2] for o in out) == 0:
            break
    else:
        raise RuntimeError(f"{prog.algorithm} did not converge within {limit} supersteps")

    if prog.algorithm == "cc":
        values = np.arange(g.num_vertices, dtype=np.float64)
    else:
        values = np.full(g.num_vertices, np.inf)
        values[prog.source] = 0.0
    for w in workers:
        for v, x in w.result():
            values[v] = x
    return values.astype(np.int64) if prog.algorithm == "cc" else values


def _run_pagerank(g, subgraphs, prog, sched, sent_cols, recv_cols, unit_cols):
    p = len(subgraphs)
    n = g.num_vertices
    base = (1.0 - prog.damping) / n
    outdeg = out_degrees(g)
    workers = [_PageRankWorker(sg, outdeg, base, prog.damping) for sg in subgraphs]
    for w in workers:
        w.init(1.0 / n)
    for _ in range(prog.iterations):
        gathered = sched.map(lambda w: w.gather(), workers)
        inboxes, sent1, recv1 = _deliver([o[0] for o in gathered], p)
        outs = sched.map(lambda w, box: w.combine(box), workers, inboxes)
        inboxes, sent2, recv2 = _deliver(outs, p)
        sched.map(lambda w, box: w.apply(box), workers, inboxes)
        sent_cols.append(sent1 + sent2)
        recv_cols.append(recv1 + recv2)
        unit_cols.append(np.array([o[1] for o in gathered], dtype=np.int64))

    values = np.full(n, base)
    for w in workers:
        for v, x in w.result():
            values[v] = x
    return values
