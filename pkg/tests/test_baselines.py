from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vertexcut import BaselineParams, Graph, ValidationError, compute_metrics, partition_cvc, \
    partition_dbh, partition_random
from vertexcut.baselines import default_grid, hash64

from .conftest import A, E, random_graph

PARTITIONERS = [partition_dbh, partition_cvc, partition_random]


def test_hash64_basic_properties():
    h = hash64(np.arange(4), seed=0)
    assert h.dtype == np.uint64
    assert len(set(h.tolist())) == 4
    assert hash64([5], seed=1)[0] != hash64([5], seed=2)[0]


def test_hash64_reference_implementation():
    mask = (1 << 64) - 1

    def mix(x):
        z = (x + 0x9E3779B97F4A7C15) & mask
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        return z ^ (z >> 31)

    for seed in (0, 7, 2**63 + 5):
        salt = mix(seed & mask)
        xs = [0, 1, 2, 12345, 2**40 + 3]
        assert hash64(xs, seed).tolist() == [mix(x ^ salt) for x in xs]


def test_dbh_hashes_lower_degree_endpoint(example_graph):
    g = example_graph
    a = partition_dbh(g, BaselineParams(4, seed=3))
    pos = [tuple(e) for e in g.edges()].index((A, E))
    assert a.part[pos] == int(hash64([E], 3)[0] % np.uint64(4))


@pytest.mark.parametrize("fn", PARTITIONERS)
def test_p1_everything_in_zero(fn, example_graph):
    assert not fn(example_graph, BaselineParams(1)).part.any()


def test_dbh_star():
    n_leaves = 1000
    g = Graph.from_edges([(0, k) for k in range(1, n_leaves + 1)])
    a = partition_dbh(g, BaselineParams(8, seed=0))
    leaf_parts = (hash64(np.arange(1, n_leaves + 1), 0) % np.uint64(8)).astype(int)
    centre_replicas = len(set(leaf_parts.tolist()))
    assert np.array_equal(a.part, leaf_parts)
    assert a.replicas[0] == centre_replicas <= 8
    rf = compute_metrics(g, a).replication_factor
    assert rf == pytest.approx((n_leaves + centre_replicas) / (n_leaves + 1), abs=1e-12)


def test_cvc_replicas_2x2():
    g = random_graph(np.random.default_rng(2), 200, 3000)
    a = partition_cvc(g, BaselineParams(4, grid=(2, 2)))
    assert a.replicas.max() <= 3


def test_cvc_replicas_16_default_grid():
    g = random_graph(np.random.default_rng(4), 1000, 10_000)
    assert default_grid(16) == (4, 4)
    a = partition_cvc(g, BaselineParams(16))
    assert a.params["grid"] == [4, 4]
    # count replicas per vertex directly
    per_vertex = [set() for _ in range(g.num_vertices)]
    for (u, v), k in zip(g.edges(), a.part.tolist()):
        per_vertex[u].add(k)
        per_vertex[v].add(k)
    assert max(len(s) for s in per_vertex) <= 7


def test_cvc_prime_degenerates_with_warning():
    g = random_graph(np.random.default_rng(0), 30, 100)
    a = partition_cvc(g, BaselineParams(7))
    assert a.params["grid"] == [1, 7]
    assert a.warnings and "degenerate" in a.warnings[0]
    assert not partition_cvc(g, BaselineParams(6)).warnings


@pytest.mark.parametrize("p,grid", [(12, (3, 4)), (9, (3, 3)), (8, (2, 4)), (2, (1, 2)), (1, (1, 1))])
def test_default_grid(p, grid):
    assert default_grid(p) == grid


def test_bad_grid():
    g = Graph.from_edges([(0, 1)])
    with pytest.raises(ValidationError):
        partition_cvc(g, BaselineParams(6, grid=(2, 2)))


def test_random_balance_binomial():
    n_edges, p = 10**6, 16
    g = Graph(1000, np.zeros(n_edges, dtype=np.int64), np.ones(n_edges, dtype=np.int64))
    counts = partition_random(g, BaselineParams(p, seed=0)).edge_counts
    sigma = math.sqrt(n_edges * (1 / p) * (1 - 1 / p))
    assert np.all(np.abs(counts - n_edges / p) <= 3 * sigma)


graphs = st.builds(lambda seed, n, m: random_graph(np.random.default_rng(seed), n, m),
                   st.integers(0, 2**32), st.integers(2, 80), st.integers(1, 300))


@settings(max_examples=60, deadline=None)
@given(graphs, st.integers(1, 16), st.integers(0, 2**63))
def test_baseline_invariants(g, p, seed):
    prm = BaselineParams(p, seed=seed)
    for fn in PARTITIONERS:
        a = fn(g, prm)
        assert a.part.shape == (g.num_edges,) and 0 <= a.part.min() and a.part.max() < p
        assert np.array_equal(a.part, fn(g, prm).part)

    deg = g.degrees
    a = partition_dbh(g, prm)
    h = hash64(np.arange(g.num_vertices), seed) % np.uint64(p)
    for (u, v), k in zip(g.edges(), a.part.tolist()):
        hashed = v if deg[v] < deg[u] else u
        assert deg[hashed] <= deg[u if hashed == v else v]
        assert k == h[hashed]

    a = partition_cvc(g, prm)
    rows, cols = a.params["grid"]
    src_rows = {}
    for (u, _), k in zip(g.edges(), a.part.tolist()):
        src_rows.setdefault(u, set()).add(k // cols)
    assert all(len(r) == 1 for r in src_rows.values())
    assert a.replicas.max() <= rows + cols - 1
