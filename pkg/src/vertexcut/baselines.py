"""Hash-based vertex-cut baselines: DBH, 2D Cartesian (CVC) and uniform edge hashing.

All three use :func:`hash64`, the splitmix64 finalizer applied to ``x XOR mix(seed)``,
computed in wrapping uint64 arithmetic so results are identical on every platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .assignment import PartitionAssignment
from .errors import ValidationError
from .graph import Graph

_MASK = (1 << 64) - 1


def _mix_int(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def hash64(x, seed: int = 0) -> np.ndarray:
    """Salted splitmix64 finalizer over an integer array; returns uint64."""
    salt = np.uint64(_mix_int(seed & _MASK))
    z = np.asarray(x, dtype=np.int64).astype(np.uint64) ^ salt
    with np.errstate(over="ignore"):
        z = z + np.uint64(0x9E3779B97F4A7C15)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def default_grid(p: int) -> tuple[int, int]:
    """(r, p // r) with r the largest divisor of p not exceeding sqrt(p)."""
    r = math.isqrt(p)
    while p % r:
        r -= 1
    return r, p // r


@dataclass(frozen=True)
class BaselineParams:
    p: int
    seed: int = 0
    grid: tuple[int, int] | None = None

    def validate(self) -> None:
        if int(self.p) != self.p or self.p < 1:
            raise ValidationError(f"p must be a positive integer, got {self.p}")
        if self.grid is not None:
            rows, cols = self.grid
            if rows < 1 or cols < 1 or rows * cols != self.p:
                raise ValidationError(f"grid {self.grid} does not factor p={self.p}")


def _mod(h: np.ndarray, k: int) -> np.ndarray:
    return (h % np.uint64(k)).astype(np.int64)


def partition_dbh(g: Graph, params: BaselineParams) -> PartitionAssignment:
    """Hash each edge by its lower-degree endpoint (src on equal degrees)."""
    params.validate()
    deg = g.degrees
    pick = np.where(deg[g.dst] < deg[g.src], g.dst, g.src)
    part = _mod(hash64(pick, params.seed), params.p)
    return PartitionAssignment(g, part, params.p, algorithm="dbh",
                               params={"p": params.p, "seed": params.seed})


def partition_cvc(g: Graph, params: BaselineParams) -> PartitionAssignment:
    """Place edge (u, v) in grid cell (h(u) mod rows, h(v) mod cols), row-major.

    A vertex therefore appears only in its own grid row (as a source) and its own grid
    column (as a target): at most rows + cols - 1 replicas.
    """
    params.validate()
    warnings: tuple[str, ...] = ()
    if params.grid is not None:
        rows, cols = params.grid
    else:
        rows, cols = default_grid(params.p)
        if rows == 1 and params.p > 1:
            warnings = (f"cvc: p={params.p} has no non-trivial factorisation; "
                        f"using degenerate grid (1, {params.p})",)
    h_src = hash64(g.src, params.seed)
    h_dst = hash64(g.dst, params.seed)
    part = _mod(h_src, rows) * cols + _mod(h_dst, cols)
    return PartitionAssignment(g, part, params.p, algorithm="cvc",
                               params={"p": params.p, "seed": params.seed, "grid": [rows, cols]},
                               warnings=warnings)


def partition_random(g: Graph, params: BaselineParams) -> PartitionAssignment:
    """Hash the edge's position in the edge list."""
    params.validate()
    part = _mod(hash64(np.arange(g.num_edges), params.seed), params.p)
    return PartitionAssignment(g, part, params.p, algorithm="random",
                               params={"p": params.p, "seed": params.seed})
