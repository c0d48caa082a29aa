"""Immutable communication-graph snapshots and hop-limited closeness centrality.

A snapshot is an undirected graph over the vehicles that were in direct
radio range of each other at one instant. Hop distances come from
breadth-first search with a depth cutoff, and every search reports how many
adjacency entries it scanned so callers can account for computational cost.

Distance mappings omit unreachable vertices: ``v`` has an entry iff it lies
within the requested hop cutoff of the source (the source itself at 0).
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator


class UnknownVehicleError(KeyError):
    """An operation named a vehicle id that is not in the snapshot."""

    def __init__(self, vehicle: int):
        super().__init__(vehicle)
        self.vehicle = vehicle

    def __str__(self) -> str:
        return f"unknown vehicle id {self.vehicle}"


class SnapshotGraph:
    """Undirected vehicle graph at one instant, immutable after construction.

    Adjacency lists are stored sorted by id so iteration order, and any
    tie-breaking that depends on it downstream, is deterministic. Self-loops
    are rejected; duplicate edges collapse to one.
    """

    __slots__ = ("_adj", "_vertices", "_n_edges")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        adj: dict[int, set[int]] = {}
        for v in vertices:
            v = int(v)
            if v < 0:
                raise ValueError(f"vehicle ids must be non-negative, got {v}")
            adj.setdefault(v, set())
        n_edges = 0
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop on vehicle {i}")
            if i not in adj:
                raise UnknownVehicleError(i)
            if j not in adj:
                raise UnknownVehicleError(j)
            if j not in adj[i]:
                adj[i].add(j)
                adj[j].add(i)
                n_edges += 1
        self._adj: dict[int, tuple[int, ...]] = {
            v: tuple(sorted(nbrs)) for v, nbrs in sorted(adj.items())
        }
        self._vertices: tuple[int, ...] = tuple(self._adj)
        self._n_edges = n_edges

    @property
    def vertices(self) -> tuple[int, ...]:
        """All vehicle ids, ascending."""
        return self._vertices

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_edges(self) -> int:
        return self._n_edges

    def __contains__(self, v: int) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Direct (1-hop) neighbors of ``v``, ascending."""
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVehicleError(v) from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._adj.get(i, ())

    def edges(self) -> Iterator[tuple[int, int]]:
        """Each undirected edge once, as (i, j) with i < j, in sorted order."""
        for v, nbrs in self._adj.items():
            for u in nbrs:
                if v < u:
                    yield (v, u)

    def __repr__(self) -> str:
        return f"SnapshotGraph(n_vertices={self.n_vertices}, n_edges={self.n_edges})"


def bfs_distances(
    g: SnapshotGraph, source: int, cutoff: int
) -> tuple[dict[int, int], int]:
    """Hop distances from ``source`` to every vertex within ``cutoff`` hops.

    Returns ``(distances, edges_examined)`` where ``distances`` maps each
    reached vertex to its hop count (source included at 0) and
    ``edges_examined`` counts the adjacency entries scanned, i.e. the
    enqueueing attempts made by the search. Vertices at depth ``cutoff`` are
    not expanded further.
    """
    if source not in g:
        raise UnknownVehicleError(source)
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    dist = {source: 0}
    edges_examined = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        if du == cutoff:
            continue
        for w in g.neighbors(u):
            edges_examined += 1
            if w not in dist:
                dist[w] = du + 1
                queue.append(w)
    return dist, edges_examined


def d_hop_neighborhood(g: SnapshotGraph, v: int, d: int) -> set[int]:
    """Vertices within 1..d hops of ``v``, excluding ``v`` itself."""
    dist, _ = bfs_distances(g, v, d)
    del dist[v]
    return set(dist)


def k_closeness(g: SnapshotGraph, v: int, k: int) -> float:
    """Closeness centrality of ``v`` restricted to its k-hop neighborhood.

    Reciprocal of the farness accumulated over vertices at 1..k hops.
    A vertex with no neighbor within k hops has centrality 0, so the value
    is total over the whole snapshot and isolated vehicles need no special
    casing downstream.
    """
    dist, _ = bfs_distances(g, v, k)
    farness = sum(dist.values())
    return 1.0 / farness if farness else 0.0


def all_k_closeness(g: SnapshotGraph, k: int) -> tuple[dict[int, float], int]:
    """k-limited closeness for every vertex, plus total edges examined.

    Each vertex is an independent depth-limited search, so the per-vertex
    values are identical whether evaluated sequentially or concurrently;
    this implementation runs them in ascending id order. The edge count is
    the summed search work and feeds the computational-cost metric.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    values: dict[int, float] = {}
    total_edges = 0
    for v in g.vertices:
        dist, scanned = bfs_distances(g, v, k)
        farness = sum(dist.values())
        values[v] = 1.0 / farness if farness else 0.0
        total_edges += scanned
    return values, total_edges
