"""Shared graph builders and independent reference computations for tests.

The Floyd-Warshall oracle here deliberately avoids the package's BFS code
path: distances come from repeated min-plus relaxation over a dense matrix.
"""

from __future__ import annotations

import math
import random

import numpy as np

from apsel.graph import SnapshotGraph


def path_graph(n: int) -> SnapshotGraph:
    return SnapshotGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> SnapshotGraph:
    edges = [(i, (i + 1) % n) for i in range(n)]
    return SnapshotGraph(range(n), edges)


def star_graph(n_leaves: int) -> SnapshotGraph:
    return SnapshotGraph(range(n_leaves + 1), [(0, i) for i in range(1, n_leaves + 1)])


def grid_graph(rows: int, cols: int) -> SnapshotGraph:
    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
    return SnapshotGraph(range(rows * cols), edges)


def gnp_graph(n: int, p: float, seed: int) -> SnapshotGraph:
    """Erdos-Renyi G(n, p) with a private RNG, vertices 0..n-1."""
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return SnapshotGraph(range(n), edges)


def connected_gnp_graph(n: int, p: float, seed: int) -> SnapshotGraph:
    """G(n, p) plus a random spanning path so the result is connected."""
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    edges = {tuple(sorted(e)) for e in zip(order, order[1:])}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.add((i, j))
    return SnapshotGraph(range(n), sorted(edges))


def geometric_snapshot(
    n: int, area_side: float, seed: int
) -> dict[int, tuple[float, float]]:
    """Uniform random positions in a square, keyed by vehicle id."""
    rng = random.Random(seed)
    return {
        i: (rng.uniform(0.0, area_side), rng.uniform(0.0, area_side)) for i in range(n)
    }


def hop_matrix(g: SnapshotGraph) -> tuple[list[int], np.ndarray]:
    """All-pairs hop distances by Floyd-Warshall min-plus relaxation."""
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for i, j in g.edges():
        dist[index[i], index[j]] = 1.0
        dist[index[j], index[i]] = 1.0
    for k in range(n):
        dist = np.minimum(dist, dist[:, k : k + 1] + dist[k : k + 1, :])
    return verts, dist


def truncated_closeness_from_matrix(
    verts: list[int], dist: np.ndarray, k: int
) -> dict[int, float]:
    """k-limited closeness derived from a full distance matrix."""
    out = {}
    for i, v in enumerate(verts):
        row = dist[i]
        mask = (row >= 1) & (row <= k)
        farness = row[mask].sum()
        out[v] = 1.0 / float(farness) if farness > 0 else 0.0
    return out


def full_closeness_from_matrix(verts: list[int], dist: np.ndarray) -> dict[int, float]:
    """Plain closeness (reciprocal farness over all reachable vertices)."""
    out = {}
    for i, v in enumerate(verts):
        row = dist[i]
        mask = np.isfinite(row) & (row >= 1)
        farness = row[mask].sum()
        out[v] = 1.0 / float(farness) if farness > 0 else 0.0
    return out


def diameter(dist: np.ndarray) -> int:
    finite = dist[np.isfinite(dist)]
    return int(finite.max()) if finite.size else 0


def is_independent_set(g: SnapshotGraph, s: set[int]) -> bool:
    return not any(g.has_edge(i, j) for i in s for j in s if i < j)


def mean_degree(g: SnapshotGraph) -> float:
    return 2.0 * g.n_edges / g.n_vertices if g.n_vertices else 0.0


def euclid(a: tuple[float, float], b: tuple[float, float]) -> float:
    return math.dist(a, b)
