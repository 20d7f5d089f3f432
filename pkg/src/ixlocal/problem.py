"""Unicast index coding problems, their ESUP, and the three-receiver family.

Message indices are 1-based throughout, as are the B* vertex labels 1..12.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .graphs import DirectedGraph, UndirectedGraph, underlying_undirected


class InvalidProblem(ValueError):
    """Raised when an operation needs a valid problem and gets an invalid one."""

    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("; ".join(violations))


@dataclass(frozen=True)
class Receiver:
    wants: frozenset[int]
    knows: frozenset[int]

    def __init__(self, wants: Iterable[int], knows: Iterable[int] = ()):
        object.__setattr__(self, "wants", frozenset(int(j) for j in wants))
        object.__setattr__(self, "knows", frozenset(int(j) for j in knows))


@dataclass(frozen=True)
class UnicastProblem:
    """``N`` messages labelled by ``messages`` and a tuple of receivers.

    ``messages`` defaults to ``1..N``. Subproblems of B* keep their original
    labels, so their message set is some ``S`` rather than ``[|S|]``.
    """

    receivers: tuple[Receiver, ...]
    messages: tuple[int, ...]

    def __init__(self, receivers: Iterable[Receiver], messages: Iterable[int] | int | None = None):
        receivers = tuple(receivers)
        if messages is None:
            mset = set().union(*(r.wants | r.knows for r in receivers)) if receivers else set()
            messages = sorted(mset)
        elif isinstance(messages, int):
            messages = range(1, messages + 1)
        object.__setattr__(self, "receivers", receivers)
        object.__setattr__(self, "messages", tuple(sorted({int(j) for j in messages})))

    @property
    def N(self) -> int:
        return len(self.messages)

    @property
    def n(self) -> int:
        return len(self.receivers)

    def interference(self, i: int) -> frozenset[int]:
        r = self.receivers[i]
        return frozenset(self.messages) - r.wants - r.knows

    def demander(self, j: int) -> int:
        for i, r in enumerate(self.receivers):
            if j in r.wants:
                return i
        raise KeyError(j)

    @property
    def is_single_unicast(self) -> bool:
        return all(len(r.wants) == 1 for r in self.receivers)

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "messages": list(self.messages),
            "receivers": [
                {"wants": sorted(r.wants), "knows": sorted(r.knows)} for r in self.receivers
            ],
        }


def validate(p: UnicastProblem) -> list[str]:
    """List every violated invariant of ``p``; an empty list means valid."""
    problems = []
    mset = set(p.messages)
    owner: dict[int, int] = {}
    for i, r in enumerate(p.receivers, start=1):
        stray = (r.wants | r.knows) - mset
        if stray:
            problems.append(f"receiver {i} references unknown messages {sorted(stray)}")
        both = r.wants & r.knows
        if both:
            problems.append(f"receiver {i} both wants and knows {sorted(both)}")
        for j in sorted(r.wants):
            if j in owner:
                problems.append(
                    f"message {j} is wanted by receivers {owner[j]} and {i} (not unicast)"
                )
            else:
                owner[j] = i
    orphans = mset - set(owner)
    if orphans:
        problems.append(f"messages {sorted(orphans)} are wanted by no receiver")
    return problems


def require_valid(p: UnicastProblem) -> None:
    violations = validate(p)
    if violations:
        raise InvalidProblem(violations)


def esup(p: UnicastProblem) -> tuple[UnicastProblem, tuple[tuple[int, ...], ...]]:
    """Split every receiver into one receiver per wanted message.

    Returns the single-unicast problem and, for each original receiver, the
    indices of its children in the new problem. Receivers with nothing to
    decode have no children.
    """
    require_valid(p)
    children: list[tuple[int, ...]] = []
    out: list[Receiver] = []
    for r in p.receivers:
        mine = []
        for j in sorted(r.wants):
            mine.append(len(out))
            out.append(Receiver([j], r.knows))
        children.append(tuple(mine))
    return UnicastProblem(out, p.messages), tuple(children)


def side_info_graph(p: UnicastProblem) -> DirectedGraph:
    """Edge ``(i, j)`` whenever the receiver demanding ``i`` knows ``j``."""
    require_valid(p)
    if not p.is_single_unicast:
        raise ValueError("side information graph needs a single-unicast problem")
    edges = []
    for r in p.receivers:
        (i,) = r.wants
        edges.extend((i, j) for j in r.knows)
    return DirectedGraph(p.messages, edges)


def conflict_graph(p: UnicastProblem) -> UndirectedGraph:
    """Underlying undirected graph of the ESUP side information graph of ``p``."""
    return underlying_undirected(side_info_graph(esup(p)[0]))


# --- the canonical three-receiver problem -----------------------------------

BSTAR_MESSAGES = tuple(range(1, 13))
BSTAR_WANTS = (frozenset({1, 2, 3, 4}), frozenset({5, 6, 7, 8}), frozenset({9, 10, 11, 12}))
BSTAR_KNOWS = (frozenset({5, 6, 9, 10}), frozenset({1, 2, 9, 11}), frozenset({1, 3, 5, 7}))


def _check_subset(s: Iterable[int]) -> frozenset[int]:
    s = frozenset(int(v) for v in s)
    bad = s - set(BSTAR_MESSAGES)
    if bad:
        raise ValueError(f"subset entries {sorted(bad)} are outside 1..12")
    return s


def build_bstar() -> UnicastProblem:
    return build_bstar_sub(BSTAR_MESSAGES)


def build_bstar_sub(s: Iterable[int]) -> UnicastProblem:
    """The subproblem of B* keeping only the messages in ``s`` (labels unchanged)."""
    s = _check_subset(s)
    receivers = [Receiver(w & s, k & s) for w, k in zip(BSTAR_WANTS, BSTAR_KNOWS)]
    return UnicastProblem(receivers, s)


def subset_label_map() -> dict[int, str]:
    """Name each B* message by the 3-way intersection it represents, e.g. ``W1∩K2∩Y3``."""
    labels = {}
    for v in BSTAR_MESSAGES:
        (owner,) = [i for i in range(3) if v in BSTAR_WANTS[i]]
        parts = [f"W{owner + 1}"]
        others = [i for i in range(3) if i != owner]
        known = [i for i in others if v in BSTAR_KNOWS[i]]
        unknown = [i for i in others if v not in BSTAR_KNOWS[i]]
        parts += [f"K{i + 1}" for i in known] + [f"Y{i + 1}" for i in unknown]
        labels[v] = "∩".join(parts)
    return labels


@lru_cache(maxsize=None)
def gstar() -> DirectedGraph:
    return side_info_graph(esup(build_bstar())[0])


@lru_cache(maxsize=None)
def gstar_u() -> UndirectedGraph:
    return underlying_undirected(gstar())


def subset_from_mask(mask: int) -> frozenset[int]:
    return frozenset(v for v in BSTAR_MESSAGES if mask >> (v - 1) & 1)


def all_subsets() -> list[frozenset[int]]:
    """All 4096 subsets of [12] in colexicographic order."""
    return [subset_from_mask(mask) for mask in range(1 << 12)]


def identify_bstar_subset(p: UnicastProblem) -> dict[int, int] | None:
    """Map each message of a problem with at most three receivers to its B* vertex.

    Receiver ``i`` of ``p`` plays receiver ``i`` of B*. Returns ``None`` when
    ``p`` has more than three receivers or two messages share a type, since
    then ``p`` is not literally a subproblem B*_S.
    """
    require_valid(p)
    if p.n > 3:
        return None
    padded = list(p.receivers) + [Receiver([], [])] * (3 - p.n)
    mapping: dict[int, int] = {}
    for j in p.messages:
        (owner,) = [i for i in range(3) if j in padded[i].wants]
        pattern = tuple(j in padded[i].knows for i in range(3))
        (v,) = [
            v for v in BSTAR_WANTS[owner]
            if tuple(v in BSTAR_KNOWS[i] for i in range(3)) == pattern
        ]
        if v in mapping.values():
            return None
        mapping[j] = v
    return mapping
