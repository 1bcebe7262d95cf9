"""Per-superstep message and work accounting for a simulated BSP run."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np


@dataclass(eq=False)
class SimulationTrace:
    """Counters indexed ``[worker, superstep]``.

    A message is one (vertex, value) pair sent to one remote worker. ``compute_units``
    counts local arcs scanned.
    """

    program: str
    messages_sent: np.ndarray
    messages_received: np.ndarray
    compute_units: np.ndarray

    @property
    def num_workers(self) -> int:
        return self.messages_sent.shape[0]

    @property
    def num_supersteps(self) -> int:
        return self.messages_sent.shape[1]

    @property
    def total_messages(self) -> int:
        return int(self.messages_sent.sum())

    @property
    def total_compute(self) -> int:
        return int(self.compute_units.sum())

    def messages_per_superstep(self) -> np.ndarray:
        return self.messages_sent.sum(axis=0)

    def messages_per_worker(self) -> np.ndarray:
        return self.messages_sent.sum(axis=1)

    @property
    def max_mean_ratio(self) -> float:
        per_worker = self.messages_per_worker()
        total = per_worker.sum()
        if total == 0:
            return 1.0
        return float(per_worker.max() / (total / per_worker.size))

    @property
    def sync_imbalance(self) -> int:
        """Sum over supersteps of max - min worker load, load = compute units + messages sent."""
        if self.num_supersteps == 0:
            return 0
        load = self.compute_units + self.messages_sent
        return int((load.max(axis=0) - load.min(axis=0)).sum())

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimulationTrace):
            return NotImplemented
        return (self.program == other.program
                and np.array_equal(self.messages_sent, other.messages_sent)
                and np.array_equal(self.messages_received, other.messages_received)
                and np.array_equal(self.compute_units, other.compute_units))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["superstep", "worker", "messages_sent", "compute_units"])
        for k in range(self.num_supersteps):
            for i in range(self.num_workers):
                w.writerow([k, i, int(self.messages_sent[i, k]), int(self.compute_units[i, k])])
        return buf.getvalue()


@dataclass(frozen=True)
class TraceStats:
    program: str
    workers: int
    supersteps: int
    total_messages: int
    max_mean_ratio: float
    sync_imbalance: int
    total_compute: int
    messages_per_worker: list[int]


def trace_stats(t: SimulationTrace) -> TraceStats:
    return TraceStats(
        program=t.program, workers=t.num_workers, supersteps=t.num_supersteps,
        total_messages=t.total_messages, max_mean_ratio=t.max_mean_ratio,
        sync_imbalance=t.sync_imbalance, total_compute=t.total_compute,
        messages_per_worker=[int(x) for x in t.messages_per_worker()],
    )
