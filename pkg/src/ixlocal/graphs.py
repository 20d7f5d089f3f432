"""Immutable directed and undirected graphs over integer vertex labels.

Labels are never re-indexed: an induced subgraph keeps the labels of its
parent, so vertex ``7`` of a subproblem is still vertex ``7``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Union


def _vertex_tuple(vertices: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted({int(v) for v in vertices}))


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]] = ()):
        verts = _vertex_tuple(vertices)
        vset = set(verts)
        es = set()
        for i, j in edges:
            i, j = int(i), int(j)
            if i == j:
                raise ValueError(f"self-loop on vertex {i}")
            if i not in vset or j not in vset:
                raise ValueError(f"edge ({i}, {j}) has an endpoint outside the vertex set")
            es.add((i, j))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(es))

    def successors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(j for (i, j) in self.edges if i == v))

    def predecessors(self, v: int) -> tuple[int, ...]:
        return tuple(sorted(i for (i, j) in self.edges if j == v))

    def adjacency(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for i, j in self.edges:
            out[i].append(j)
        return {v: tuple(sorted(ns)) for v, ns in out.items()}

    def has_edge(self, i: int, j: int) -> bool:
        return (i, j) in self.edges

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple[int, ...]
    edges: frozenset[frozenset[int]]

    def __init__(self, vertices: Iterable[int], edges: Iterable[Iterable[int]] = ()):
        verts = _vertex_tuple(vertices)
        vset = set(verts)
        es = set()
        for e in edges:
            pair = frozenset(int(v) for v in e)
            if len(pair) != 2:
                raise ValueError(f"edge {sorted(pair)} is a self-loop or malformed")
            if not pair <= vset:
                raise ValueError(f"edge {sorted(pair)} has an endpoint outside the vertex set")
            es.add(pair)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", frozenset(es))

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(u for e in self.edges if v in e for u in e if u != v)

    def adjacency(self) -> dict[int, frozenset[int]]:
        out: dict[int, set[int]] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = tuple(e)
            out[a].add(b)
            out[b].add(a)
        return {v: frozenset(ns) for v, ns in out.items()}

    def has_edge(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def __len__(self) -> int:
        return len(self.vertices)


Graph = Union[DirectedGraph, UndirectedGraph]


def underlying_undirected(g: DirectedGraph) -> UndirectedGraph:
    """Keep ``{i, j}`` exactly when both ``(i, j)`` and ``(j, i)`` are edges."""
    return UndirectedGraph(
        g.vertices, [(i, j) for (i, j) in g.edges if i < j and (j, i) in g.edges]
    )


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    keep = {int(v) for v in s}
    unknown = keep - set(g.vertices)
    if unknown:
        raise ValueError(f"unknown vertices {sorted(unknown)}")
    if isinstance(g, DirectedGraph):
        return DirectedGraph(keep, [(i, j) for (i, j) in g.edges if i in keep and j in keep])
    return UndirectedGraph(keep, [e for e in g.edges if e <= keep])


def complement(g: UndirectedGraph) -> UndirectedGraph:
    return UndirectedGraph(
        g.vertices,
        [(a, b) for a, b in combinations(g.vertices, 2) if frozenset((a, b)) not in g.edges],
    )


def topological_order(g: DirectedGraph) -> tuple[int, ...] | None:
    """Kahn's algorithm with smallest-label tie breaking; ``None`` if cyclic."""
    import heapq

    indeg = {v: 0 for v in g.vertices}
    for _, j in g.edges:
        indeg[j] += 1
    adj = g.adjacency()
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        v = heapq.heappop(heap)
        order.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(order) != len(g.vertices):
        return None
    return tuple(order)


def is_acyclic(g: DirectedGraph) -> bool:
    return topological_order(g) is not None


def _shortest_cycle_length(g: DirectedGraph, adj: dict[int, tuple[int, ...]]) -> int | None:
    best = None
    for s in g.vertices:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w == s:
                    length = dist[v] + 1
                    if best is None or length < best:
                        best = length
                    queue.clear()
                    break
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
    return best


def find_cycle(g: DirectedGraph) -> tuple[int, ...] | None:
    """Return a witness directed cycle, or ``None`` when ``g`` is acyclic.

    The witness is a shortest cycle, written starting from its smallest
    vertex, and lexicographically smallest among all such sequences.
    """
    adj = g.adjacency()
    length = _shortest_cycle_length(g, adj)
    if length is None:
        return None

    def extend(path: list[int], on_path: set[int]) -> tuple[int, ...] | None:
        v = path[-1]
        if len(path) == length:
            return tuple(path) if path[0] in adj[v] else None
        for w in adj[v]:
            if w > path[0] and w not in on_path:
                path.append(w)
                on_path.add(w)
                found = extend(path, on_path)
                path.pop()
                on_path.discard(w)
                if found:
                    return found
        return None

    for s in g.vertices:
        found = extend([s], {s})
        if found:
            return found
    raise AssertionError("shortest cycle length found but no cycle reconstructed")
