"""Immutable simple undirected graphs and the handful of queries everything else needs.

Vertices are dense integers ``0..n-1``.  An edge is always the sorted pair
``(u, v)`` with ``u < v``; use :func:`edge` to normalise.  Adjacency is kept
twice: as frozensets (convenient iteration) and as integer bitmasks (fast
set algebra for the pattern searches and the solver hot paths).
"""

from __future__ import annotations

import math
from collections import deque
from typing import Iterable, Iterator, Mapping

Edge = tuple[int, int]

INFINITE_DISTANCE = math.inf


class GraphError(ValueError):
    """Raised for malformed graph inputs (bad vertex, self-loop, duplicate edge)."""


def edge(u: int, v: int) -> Edge:
    """Normalise an unordered vertex pair to the canonical (min, max) tuple."""
    return (u, v) if u < v else (v, u)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """A finite simple undirected graph, immutable after construction.

    Optional per-edge weights default to 1, and an optional ``names`` tuple
    preserves external vertex labels for reporting.
    """

    __slots__ = ("n", "edges", "adj", "bits", "weights", "names", "_edge_set")

    def __init__(
        self,
        n: int,
        edges: Iterable[Edge],
        weights: Mapping[Edge, float] | None = None,
        names: tuple[str, ...] | None = None,
    ) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        bits = [0] * n
        canon: list[Edge] = []
        seen: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
            adj[u].add(v)
            adj[v].add(u)
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        canon.sort()
        w: dict[Edge, float] = {}
        if weights:
            for e, wt in weights.items():
                e = edge(*e)
                if e not in seen:
                    raise GraphError(f"weight given for absent edge {e}")
                if wt < 0:
                    raise GraphError(f"negative weight on {e}")
                w[e] = wt
        for e in canon:
            w.setdefault(e, 1)
        if names is not None and len(names) != n:
            raise GraphError("names tuple must have one entry per vertex")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in adj))
        object.__setattr__(self, "bits", tuple(bits))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "_edge_set", seen)

    def __setattr__(self, key, value):  # pragma: no cover - guard rail
        raise AttributeError("Graph is immutable")

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise GraphError(f"unknown vertex {v}")

    def neighbors(self, v: int) -> frozenset[int]:
        """Open neighborhood of ``v``."""
        self.check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self._edge_set

    def has_edge_canon(self, e: Edge) -> bool:
        return e in self._edge_set

    def weight(self, e: Edge) -> float:
        return self.weights[edge(*e)]

    def matching_weight(self, matching: Iterable[Edge]) -> float:
        return sum(self.weights[edge(*e)] for e in matching)

    def vertex_name(self, v: int) -> str:
        if self.names is not None:
            return self.names[v]
        return str(v + 1)

    # -- distances and components ----------------------------------------

    def distances_from(self, sources: Iterable[int]) -> list[int]:
        """BFS distance from a source set; -1 marks unreachable vertices."""
        dist = [-1] * self.n
        queue: deque[int] = deque()
        for s in sources:
            self.check_vertex(s)
            if dist[s] == -1:
                dist[s] = 0
                queue.append(s)
        while queue:
            v = queue.popleft()
            d = dist[v] + 1
            for u in self.adj[v]:
                if dist[u] == -1:
                    dist[u] = d
                    queue.append(u)
        return dist

    def distance(self, u: int, v: int) -> float:
        d = self.distances_from([u])[v]
        return INFINITE_DISTANCE if d == -1 else d

    def edge_distance(self, e: Edge, f: Edge) -> float:
        """Shortest-path distance between two edges; 0 iff they share a vertex."""
        e, f = edge(*e), edge(*f)
        for g_ in (e, f):
            if g_ not in self._edge_set:
                raise GraphError(f"edge {g_} not in graph")
        dist = self.distances_from(e)
        reachable = [d for d in (dist[f[0]], dist[f[1]]) if d != -1]
        if not reachable:
            return INFINITE_DISTANCE
        return min(reachable)

    def distance_levels(self, anchor: Edge) -> tuple[frozenset[int], ...]:
        """Vertices grouped by distance from the anchor edge.

        Level 0 is the anchor pair itself; the union of all levels is the
        connected component containing the anchor.
        """
        anchor = edge(*anchor)
        if anchor not in self._edge_set:
            raise GraphError(f"edge {anchor} not in graph")
        dist = self.distances_from(anchor)
        top = max(dist)
        levels: list[set[int]] = [set() for _ in range(top + 1)]
        for v, d in enumerate(dist):
            if d >= 0:
                levels[d].add(v)
        return tuple(frozenset(s) for s in levels)

    def connected_components(self) -> tuple[frozenset[int], ...]:
        """Partition of the vertex set into maximal connected pieces."""
        seen = [False] * self.n
        out: list[frozenset[int]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = {start}
            seen[start] = True
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        comp.add(u)
                        queue.append(u)
            out.append(frozenset(comp))
        return tuple(out)

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.connected_components()) == 1

    # -- matchings ---------------------------------------------------------

    def _mate_map(self, matching: Iterable[Edge]) -> dict[int, int] | None:
        """Vertex-to-partner map for a matching; None if edges share vertices."""
        mate: dict[int, int] = {}
        for e in matching:
            u, v = edge(*e)
            if e not in self._edge_set:
                raise GraphError(f"matching edge {(u, v)} not in graph")
            if u in mate or v in mate:
                return None
            mate[u] = v
            mate[v] = u
        return mate

    def is_matching(self, matching: Iterable[Edge]) -> bool:
        return self._mate_map(matching) is not None

    def is_induced_matching(self, matching: Iterable[Edge]) -> bool:
        """True iff the matching's endpoints induce exactly the matching itself."""
        mate = self._mate_map(matching)
        if mate is None:
            return False
        for v, partner in mate.items():
            for u in self.adj[v]:
                if u in mate and u != partner:
                    return False
        return True

    def is_dim(self, matching: Iterable[Edge]) -> bool:
        """True iff every edge of the graph touches exactly one matching member."""
        mate = self._mate_map(matching)
        if mate is None:
            return False
        for u, v in self.edges:
            hits = (u in mate) + (v in mate)
            if mate.get(u) == v:
                hits -= 1
            if hits != 1:
                return False
        return True

    # -- subgraphs ----------------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Subgraph induced by ``vertices`` plus the new->old relabeling map."""
        old = sorted(set(vertices))
        for v in old:
            self.check_vertex(v)
        index = {v: i for i, v in enumerate(old)}
        sub_edges: list[Edge] = []
        sub_weights: dict[Edge, float] = {}
        for v in old:
            iv = index[v]
            for u in self.adj[v]:
                if u > v and u in index:
                    e = (iv, index[u])
                    sub_edges.append(e)
                    sub_weights[e] = self.weights[(v, u)]
        names = tuple(self.vertex_name(v) for v in old)
        return Graph(len(old), sub_edges, sub_weights, names), tuple(old)

    def relabel_edges(self, edges_new: Iterable[Edge], old_of_new: tuple[int, ...]) -> frozenset[Edge]:
        """Map edges of an induced subgraph back into this graph's vertex ids."""
        return frozenset(edge(old_of_new[u], old_of_new[v]) for u, v in edges_new)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"
