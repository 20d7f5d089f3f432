"""Exact linear programming over the rationals.

Two-phase tableau simplex with Bland's rule. All arithmetic is done with
:class:`fractions.Fraction`; nothing here ever touches a float.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graphs import UndirectedGraph
from .invariants import enumerate_maximal_cliques

Rational = Fraction


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    """minimize ``c·x`` subject to ``A x (sense) b`` and ``x >= 0``.

    ``senses`` holds one of ``">="``, ``"<="``, ``"="`` per row and defaults
    to all ``">="``.
    """

    c: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    senses: tuple[str, ...] = field(default=())

    def __init__(self, c: Sequence, A: Sequence[Sequence], b: Sequence, senses: Sequence[str] | None = None):
        c = tuple(Fraction(v) for v in c)
        A = tuple(tuple(Fraction(v) for v in row) for row in A)
        b = tuple(Fraction(v) for v in b)
        senses = tuple(senses) if senses is not None else (">=",) * len(A)
        if len(b) != len(A) or len(senses) != len(A):
            raise ValueError("A, b and senses must have the same number of rows")
        if any(len(row) != len(c) for row in A):
            raise ValueError("every row of A must have one entry per variable")
        if any(s not in (">=", "<=", "=") for s in senses):
            raise ValueError(f"unknown constraint sense in {senses}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "senses", senses)

    def is_feasible(self, x: Sequence[Fraction]) -> bool:
        if len(x) != len(self.c) or any(v < 0 for v in x):
            return False
        for row, rhs, sense in zip(self.A, self.b, self.senses):
            lhs = sum((a * v for a, v in zip(row, x)), Fraction(0))
            if sense == ">=" and lhs < rhs or sense == "<=" and lhs > rhs or sense == "=" and lhs != rhs:
                return False
        return True

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return sum((a * v for a, v in zip(self.c, x)), Fraction(0))


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    optimum: Fraction | None = None
    x: tuple[Fraction, ...] | None = None


def _pivot(T: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, j: int) -> None:
    row = T[r]
    p = row[j]
    if p != 1:
        T[r] = row = [v / p if v else v for v in row]
    for i, other in enumerate(T):
        if i != r and other[j] != 0:
            f = other[j]
            T[i] = [a - f * b if b else a for a, b in zip(other, row)]
    if obj[j] != 0:
        f = obj[j]
        obj[:] = [a - f * b if b else a for a, b in zip(obj, row)]
    basis[r] = j


def _run(T: list[list[Fraction]], obj: list[Fraction], basis: list[int], cols: Sequence[int]) -> bool:
    """Iterate to optimality; returns False if the objective is unbounded below."""
    while True:
        entering = next((j for j in cols if obj[j] < 0), None)
        if entering is None:
            return True
        leave, best = None, None
        for i, row in enumerate(T):
            if row[entering] > 0:
                ratio = row[-1] / row[entering]
                if best is None or ratio < best or ratio == best and basis[i] < basis[leave]:
                    leave, best = i, ratio
        if leave is None:
            return False
        _pivot(T, obj, basis, leave, entering)


def solve_min(lp: LinearProgram) -> LPResult:
    n = len(lp.c)
    m = len(lp.A)
    slack_cols = [k for k, s in enumerate(lp.senses) if s != "="]
    n_slack = len(slack_cols)
    width = n + n_slack + m  # structural, slack/surplus, artificial
    T: list[list[Fraction]] = []
    for k, (row, rhs, sense) in enumerate(zip(lp.A, lp.b, lp.senses)):
        full = list(row) + [Fraction(0)] * (n_slack + m) + [rhs]
        if sense != "=":
            full[n + slack_cols.index(k)] = Fraction(-1 if sense == ">=" else 1)
        if rhs < 0:
            full = [-v for v in full]
        full[n + n_slack + k] = Fraction(1)
        T.append(full)
    basis = [n + n_slack + k for k in range(m)]

    # phase 1: minimise the sum of artificials
    obj = [Fraction(0)] * (width + 1)
    for k in range(m):
        obj[n + n_slack + k] = Fraction(1)
    for row in T:
        obj = [a - b if b else a for a, b in zip(obj, row)]
    _run(T, obj, basis, range(width))
    if obj[-1] != 0:
        return LPResult(LPStatus.INFEASIBLE)

    # drive zero-valued artificials out of the basis, dropping redundant rows
    real = n + n_slack
    r = 0
    while r < len(T):
        if basis[r] >= real:
            j = next((j for j in range(real) if T[r][j] != 0), None)
            if j is None:
                del T[r]
                del basis[r]
                continue
            _pivot(T, obj, basis, r, j)
        r += 1

    # phase 2
    obj = [Fraction(0)] * (width + 1)
    for j in range(n):
        obj[j] = lp.c[j]
    for i, bvar in enumerate(basis):
        if obj[bvar] != 0:
            f = obj[bvar]
            obj = [a - f * b if b else a for a, b in zip(obj, T[i])]
    if not _run(T, obj, basis, range(real)):
        return LPResult(LPStatus.UNBOUNDED)

    x = [Fraction(0)] * n
    for i, bvar in enumerate(basis):
        if bvar < n:
            x[bvar] = T[i][-1]
    x = tuple(x)
    if not lp.is_feasible(x):
        raise ArithmeticError("simplex returned an infeasible point")
    return LPResult(LPStatus.OPTIMAL, lp.objective(x), x)


def _all_cliques(g: UndirectedGraph) -> list[frozenset[int]]:
    adj = g.adjacency()
    out = []
    for size in range(1, len(g) + 1):
        for c in combinations(g.vertices, size):
            if all(b in adj[a] for a, b in combinations(c, 2)):
                out.append(frozenset(c))
    return out


def clique_cover_lp(g: UndirectedGraph, cliques: Sequence[frozenset[int]]) -> LinearProgram:
    return LinearProgram(
        c=[1] * len(cliques),
        A=[[1 if v in cl else 0 for cl in cliques] for v in g.vertices],
        b=[1] * len(g.vertices),
    )


def fractional_clique_cover_number(
    g: UndirectedGraph, support: str = "maximal", budget: int | None = None
) -> tuple[Fraction, dict[frozenset[int], Fraction]]:
    """Exact χ̄_f with an optimal weighting of the cliques.

    ``support="maximal"`` puts one variable on each maximal clique;
    ``support="all"`` uses every nonempty clique (exponential, for checking).
    """
    if support == "maximal":
        cliques = enumerate_maximal_cliques(g, budget)
    elif support == "all":
        cliques = _all_cliques(g)
    else:
        raise ValueError(f"unknown support {support!r}")
    if not g.vertices:
        return Fraction(0), {}
    res = solve_min(clique_cover_lp(g, cliques))
    if res.status is not LPStatus.OPTIMAL:
        raise ArithmeticError(f"clique cover LP unexpectedly {res.status.value}")
    return res.optimum, dict(zip(cliques, res.x))
