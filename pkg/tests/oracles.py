"""Sequential reference algorithms written without any package code."""

from __future__ import annotations

import heapq
import math


def union_find_labels(n, edges):
    """Smallest vertex id of each weakly connected component."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return [find(x) for x in range(n)]


def dijkstra(n, edges, weights, source, directed):
    adj = [[] for _ in range(n)]
    for (u, v), w in zip(edges, weights):
        adj[u].append((v, w))
        if not directed:
            adj[v].append((u, w))
    dist = [math.inf] * n
    dist[source] = 0
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            if d + w < dist[v]:
                dist[v] = d + w
                heapq.heappush(heap, (d + w, v))
    return dist


def power_iteration(n, edges, directed, iterations, damping=0.85):
    arcs = []
    for u, v in edges:
        arcs.append((u, v))
        if not directed and u != v:
            arcs.append((v, u))
    outdeg = [0] * n
    for u, _ in arcs:
        outdeg[u] += 1
    rank = [1.0 / n] * n
    for _ in range(iterations):
        acc = [0.0] * n
        for u, v in arcs:
            acc[v] += rank[u] / outdeg[u]
        rank = [(1 - damping) / n + damping * x for x in acc]
    return rank
