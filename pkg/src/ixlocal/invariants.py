"""Exact graph invariants: α, χ̄, MAIS, maximal cliques, perfectness.

Everything here is exhaustive. Inputs larger than the vertex budget raise
:class:`~ixlocal.budget.BudgetExceeded` instead of falling back to a
heuristic. Witnesses are the lexicographically smallest ones (vertex sets
compared as sorted tuples), so they do not depend on search internals.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .budget import check_vertices
from .graphs import (
    DirectedGraph,
    UndirectedGraph,
    complement,
    induced_subgraph,
    underlying_undirected,
)


def _masks(g: UndirectedGraph) -> tuple[tuple[int, ...], list[int]]:
    verts = g.vertices
    index = {v: k for k, v in enumerate(verts)}
    adj = [0] * len(verts)
    for e in g.edges:
        a, b = (index[v] for v in e)
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return verts, adj


def _members(verts: tuple[int, ...], mask: int) -> frozenset[int]:
    return frozenset(verts[k] for k in range(len(verts)) if mask >> k & 1)


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class CliquePartition:
    cliques: tuple[frozenset[int], ...]

    def __init__(self, cliques: Iterable[Iterable[int]]):
        object.__setattr__(self, "cliques", tuple(frozenset(c) for c in cliques))

    def __len__(self) -> int:
        return len(self.cliques)

    def violations(self, g: UndirectedGraph) -> list[str]:
        out = []
        seen: set[int] = set()
        for c in self.cliques:
            if not c:
                out.append("empty part")
            for a, b in combinations(sorted(c), 2):
                if not g.has_edge(a, b):
                    out.append(f"part {sorted(c)} is not a clique: {a} and {b} are not adjacent")
                    break
            overlap = seen & c
            if overlap:
                out.append(f"vertices {sorted(overlap)} appear in more than one part")
            seen |= c
        missing = set(g.vertices) - seen
        extra = seen - set(g.vertices)
        if missing:
            out.append(f"vertices {sorted(missing)} are not covered")
        if extra:
            out.append(f"vertices {sorted(extra)} are not in the graph")
        return out

    def is_valid_for(self, g: UndirectedGraph) -> bool:
        return not self.violations(g)


# --- independence number ------------------------------------------------------


def independence_number(g: UndirectedGraph, budget: int | None = None) -> tuple[int, frozenset[int]]:
    check_vertices(len(g), budget, "independence_number")
    verts, adj = _masks(g)
    best = [0, 0]

    def search(chosen: int, size: int, cand: int) -> None:
        if cand == 0:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + bin(cand).count("1") <= best[0]:
            return
        v = _lowest(cand)
        search(chosen | 1 << v, size + 1, cand & ~adj[v] & ~(1 << v))
        search(chosen, size, cand & ~(1 << v))

    search(0, 0, (1 << len(verts)) - 1)
    return best[0], _members(verts, best[1])


# --- maximal cliques -------------------------------------------------------


def enumerate_maximal_cliques(g: UndirectedGraph, budget: int | None = None) -> list[frozenset[int]]:
    """Bron–Kerbosch with pivoting; cliques sorted as sorted tuples."""
    check_vertices(len(g), budget, "enumerate_maximal_cliques")
    verts, adj = _masks(g)
    found: list[int] = []

    def bk(r: int, p: int, x: int) -> None:
        if p == 0 and x == 0:
            found.append(r)
            return
        ux = p | x
        pivot = max(
            (k for k in range(len(verts)) if ux >> k & 1),
            key=lambda k: bin(p & adj[k]).count("1"),
        )
        rest = p & ~adj[pivot]
        while rest:
            v = _lowest(rest)
            bit = 1 << v
            bk(r | bit, p & adj[v], x & adj[v])
            rest &= ~bit
            p &= ~bit
            x |= bit

    if verts:
        bk(0, (1 << len(verts)) - 1, 0)
    cliques = [_members(verts, r) for r in found]
    return sorted(cliques, key=lambda c: sorted(c))


# --- clique cover number (chromatic number of the complement) -------------------


def _exact_coloring(adj: list[int], lower: int) -> list[int]:
    """Optimal vertex coloring by DSATUR branch-and-bound; returns a color per vertex."""
    n = len(adj)
    if n == 0:
        return []
    degree = [bin(a).count("1") for a in adj]

    def pick(colors: list[int]) -> int:
        best_v, best_key = -1, None
        for v in range(n):
            if colors[v] >= 0:
                continue
            sat = len({colors[w] for w in range(n) if adj[v] >> w & 1 and colors[w] >= 0})
            key = (sat, degree[v], -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    # greedy DSATUR for the initial upper bound
    colors = [-1] * n
    for _ in range(n):
        v = pick(colors)
        used = {colors[w] for w in range(n) if adj[v] >> w & 1}
        colors[v] = next(c for c in range(n) if c not in used)
    best = [max(colors) + 1, colors[:]]

    def search(colors: list[int], k: int, left: int) -> None:
        if best[0] == lower:
            return
        if left == 0:
            if k < best[0]:
                best[0], best[1] = k, colors[:]
            return
        v = pick(colors)
        used = {colors[w] for w in range(n) if adj[v] >> w & 1}
        for c in range(min(k + 1, best[0] - 1)):
            if c in used:
                continue
            colors[v] = c
            search(colors, max(k, c + 1), left - 1)
            colors[v] = -1

    if best[0] > lower:
        search([-1] * n, 0, n)
    return best[1]


def _canonical_partition(parts: Iterable[Iterable[int]]) -> CliquePartition:
    return CliquePartition(sorted((frozenset(p) for p in parts), key=lambda c: (-len(c), sorted(c))))


def clique_cover_number(g: UndirectedGraph, budget: int | None = None) -> tuple[int, CliquePartition]:
    """Minimum number of cliques partitioning the vertices, with an optimal partition.

    Parts are listed largest first, ties broken by their sorted vertex lists.
    """
    check_vertices(len(g), budget, "clique_cover_number")
    comp = complement(g)
    verts, adj = _masks(comp)
    alpha, _ = independence_number(g, budget)
    colors = _exact_coloring(adj, alpha)
    k = max(colors) + 1 if colors else 0
    parts = [[verts[v] for v in range(len(verts)) if colors[v] == c] for c in range(k)]
    return k, _canonical_partition(parts)


# --- maximum acyclic induced subgraph ------------------------------------------


def mais(g: DirectedGraph, budget: int | None = None) -> tuple[int, frozenset[int]]:
    """Size and lexicographically smallest vertex set of a maximum acyclic induced subgraph."""
    check_vertices(len(g), budget, "mais")
    verts = g.vertices
    index = {v: k for k, v in enumerate(verts)}
    out = [0] * len(verts)
    for i, j in g.edges:
        out[index[i]] |= 1 << index[j]
    # acyclic sets are independent in the underlying graph, so α bounds the search
    ceiling, _ = independence_number(underlying_undirected(g), budget)
    best = [0, 0]

    def closes_cycle(chosen: int, v: int) -> bool:
        # is v reachable from its own successors inside chosen?
        seen = 0
        stack = out[v] & chosen
        while stack:
            w = _lowest(stack)
            stack &= ~(1 << w)
            if seen >> w & 1:
                continue
            seen |= 1 << w
            if out[w] >> v & 1:
                return True
            stack |= out[w] & chosen & ~seen
        return False

    def search(k: int, chosen: int, size: int) -> None:
        if best[0] == ceiling:
            return
        if k == len(verts):
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + len(verts) - k <= best[0]:
            return
        if not (out[k] >> k & 1) and not closes_cycle(chosen, k):
            search(k + 1, chosen | 1 << k, size + 1)
        search(k + 1, chosen, size)

    search(0, 0, 0)
    return best[0], _members(verts, best[1])


# --- perfectness -------------------------------------------------------------


def _is_hole(sub: UndirectedGraph) -> bool:
    adj = sub.adjacency()
    if any(len(ns) != 2 for ns in adj.values()):
        return False
    # 2-regular: connected iff a single cycle
    start = sub.vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(sub.vertices)


def is_perfect(g: UndirectedGraph, budget: int | None = None) -> tuple[bool, frozenset[int] | None]:
    """Decide perfectness by searching for an odd hole or odd antihole.

    Returns ``(True, None)`` or ``(False, subset)`` where ``subset`` is the
    first offending vertex set by (size, lexicographic) order.
    """
    check_vertices(len(g), budget, "is_perfect")
    for size in range(5, len(g) + 1, 2):
        for s in combinations(g.vertices, size):
            sub = induced_subgraph(g, s)
            if _is_hole(sub) or _is_hole(complement(sub)):
                return False, frozenset(s)
    return True, None


def perfect_by_definition(g: UndirectedGraph, budget: int | None = None) -> tuple[bool, frozenset[int] | None]:
    """Slow check: α(H) = χ̄(H) for every induced subgraph H."""
    check_vertices(len(g), budget, "perfect_by_definition")
    for size in range(len(g) + 1):
        for s in combinations(g.vertices, size):
            h = induced_subgraph(g, s)
            if independence_number(h, budget)[0] != clique_cover_number(h, budget)[0]:
                return False, frozenset(s)
    return True, None


# --- directed cycles on independent sets ------------------------------------------


def independent_directed_cycles(g: DirectedGraph, budget: int | None = None) -> list[frozenset[int]]:
    """Vertex sets S independent in the underlying graph whose induced subgraph is one directed cycle."""
    check_vertices(len(g), budget, "independent_directed_cycles")
    succ = g.adjacency()
    touching = {v: set() for v in g.vertices}
    for i, j in g.edges:
        touching[i].add(j)
        touching[j].add(i)
    found = []

    def extend(path: list[int]) -> None:
        s, v = path[0], path[-1]
        for w in succ[v]:
            if w <= s or w in path:
                continue
            # w may only touch its predecessor and (when closing) the start
            others = touching[w] & set(path) - {v, s}
            if others or (w, v) in g.edges:
                continue
            if s != v and s in touching[w]:
                if (s, w) in g.edges or (w, s) not in g.edges:
                    continue
                if len(path) >= 2:
                    found.append(frozenset(path + [w]))
                continue
            extend(path + [w])

    for s in g.vertices:
        extend([s])
    return sorted(found, key=lambda c: sorted(c))


# --- the MAIS < α classification on the B* family ----------------------------------


class MaisClass(enum.Enum):
    MAIS_EQUALS_ALPHA = "MAIS_equals_alpha"
    MAIS_LESS_THAN_ALPHA = "MAIS_less_than_alpha"


def classify(g: DirectedGraph, budget: int | None = None) -> MaisClass:
    if mais(g, budget)[0] < independence_number(underlying_undirected(g), budget)[0]:
        return MaisClass.MAIS_LESS_THAN_ALPHA
    return MaisClass.MAIS_EQUALS_ALPHA


def classify_subset(s: Iterable[int]) -> MaisClass:
    from .problem import build_bstar_sub, esup, side_info_graph

    return classify(side_info_graph(esup(build_bstar_sub(s))[0]))


SPECIAL_CYCLES = (frozenset({2, 7, 10}), frozenset({3, 6, 11}))
ISOLATED = frozenset({4, 8, 12})


def mais_gap_closed_form(s: Iterable[int]) -> bool:
    """True iff ``s`` is {2,7,10} or {3,6,11} plus any of the isolated vertices 4, 8, 12."""
    s = frozenset(s)
    rest = s - ISOLATED
    return rest in SPECIAL_CYCLES
